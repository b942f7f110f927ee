#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "misere/errors.hpp"
#include "misere/game.hpp"

namespace misere {

namespace detail {

// Append-only array whose elements never move. Indices below size() may be
// read without locking; appends must be serialized by the caller.
template <class T, unsigned ChunkBits = 14>
class StableStore {
 public:
  static constexpr std::size_t kChunkSize = std::size_t{1} << ChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 18;

  StableStore() : chunks_(new std::atomic<T*>[kMaxChunks]) {
    for (std::size_t i = 0; i < kMaxChunks; ++i) chunks_[i].store(nullptr, std::memory_order_relaxed);
  }
  ~StableStore() {
    for (std::size_t i = 0; i < kMaxChunks; ++i) delete[] chunks_[i].load(std::memory_order_relaxed);
  }
  StableStore(const StableStore&) = delete;
  StableStore& operator=(const StableStore&) = delete;

  T& operator[](std::size_t i) const {
    return chunks_[i >> ChunkBits].load(std::memory_order_acquire)[i & (kChunkSize - 1)];
  }

  std::size_t size() const { return size_.load(std::memory_order_acquire); }

  // Returns a reference to a fresh slot at index size(); publish() makes it visible.
  T& prepare() {
    const std::size_t i = size_.load(std::memory_order_relaxed);
    const std::size_t c = i >> ChunkBits;
    if (c >= kMaxChunks) throw CapacityError("arena capacity exhausted");
    if (chunks_[c].load(std::memory_order_relaxed) == nullptr) {
      chunks_[c].store(new T[kChunkSize], std::memory_order_release);
    }
    return (*this)[i];
  }

  void publish() { size_.fetch_add(1, std::memory_order_release); }

 private:
  std::unique_ptr<std::atomic<T*>[]> chunks_;
  std::atomic<std::size_t> size_{0};
};

// Sharded memo table keyed by 64-bit keys. Insert-if-absent; values never change.
class Memo {
 public:
  std::optional<std::uint32_t> find(std::uint64_t key) const {
    const Shard& s = shard(key);
    std::lock_guard lock(s.mutex);
    auto it = s.map.find(key);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t insert(std::uint64_t key, std::uint32_t value) {
    Shard& s = shard(key);
    std::lock_guard lock(s.mutex);
    return s.map.try_emplace(key, value).first->second;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& s : shards_) {
      std::lock_guard lock(s.mutex);
      n += s.map.size();
    }
    return n;
  }

 private:
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<std::uint64_t, std::uint32_t> map;
  };

  static std::size_t index(std::uint64_t key) { return (key * 0x9E3779B97F4A7C15ull) >> 58; }
  Shard& shard(std::uint64_t key) { return shards_[index(key)]; }
  const Shard& shard(std::uint64_t key) const { return shards_[index(key)]; }

  std::array<Shard, 64> shards_;
};

}  // namespace detail

/// Hash-consed store of impartial game forms together with the misère
/// engine operations on them.
///
/// A form is the set of its options. Every distinct set receives one dense
/// GameId, so two ids are equal exactly when the forms are identical as sets.
/// All operations are pure functions of their arguments; their results are
/// memoized for the lifetime of the arena. Concurrent calls are safe.
///
/// Nimbers 0 through 4 are interned at construction and occupy ids 0..4.
class Arena {
 public:
  Arena();
  Arena(const Arena&) = delete;
  Arena& operator=(const Arena&) = delete;

  // ---- forms -------------------------------------------------------------

  /// Returns the id of the form whose options are the given set. Order and
  /// duplicates in the input are irrelevant. Throws InvalidHandle for ids
  /// not present in the arena.
  GameId intern(std::span<const GameId> options);
  GameId intern(std::initializer_list<GameId> options) {
    return intern(std::span<const GameId>(options.begin(), options.size()));
  }

  /// Options of a form, strictly ascending by id.
  std::span<const GameId> options(GameId g) const;

  std::size_t size() const { return entries_.size(); }
  bool contains(GameId g) const { return g.value < entries_.size(); }

  GameId nimber(unsigned m);
  GameId sharp(GameId g) { return intern({g}); }

  /// m if the form is literally *m = {0, ..., *(m-1)}.
  std::optional<unsigned> nimber_value(GameId g) const;

  int formal_birthday(GameId g) const;

  // ---- values ------------------------------------------------------------

  Outcome outcome(GameId g);

  /// Whether some T makes both g+T and h+T misère P-positions.
  bool linked(GameId g, GameId h);

  bool equals(GameId g, GameId h);

  /// The unique simplest form equal to g.
  GameId canonicalize(GameId g);

  /// Whether canonicalize(g) == g. Cheap after the first call.
  bool is_canonical(GameId g) { return canonicalize(g) == g; }

  /// Misère Mex Rule: defined when every option is a nimber and one of them
  /// is 0 or 1.
  std::optional<GameId> mex_reduce(GameId g);

  /// Canonical form of the disjunctive sum.
  GameId sum(GameId g, GameId h);

  /// The disjunctive sum as a form, without any simplification.
  GameId form_sum(GameId g, GameId h);

  /// Sum of n copies of g (canonical); n == 0 gives 0.
  GameId multiple(GameId g, unsigned n);

  /// The mate G^-, computed on the form. Not invariant under equality.
  GameId mate(GameId g);

  /// c(0) = (2##1)#, c(G) = {c(G')} for G in simplest form. The input is
  /// canonicalized first.
  GameId concubine(GameId g);

  Parity parity(GameId g);

  /// Birthday of the value: formal birthday of its simplest form.
  int birthday(GameId g) { return formal_birthday(canonicalize(g)); }

  /// Deterministic order on forms independent of id assignment: formal
  /// birthday first, then the recursively ordered option sequences
  /// compared lexicographically.
  bool structural_less(GameId a, GameId b) const;

  /// Options of g sorted by structural_less.
  std::vector<GameId> sorted_options(GameId g) const;

  std::size_t memo_entries() const { return equal_memo_.size() + sum_memo_.size() + form_sum_memo_.size(); }

 private:
  struct Entry {
    const GameId* options = nullptr;
    std::uint32_t count = 0;
    std::int32_t formal_birthday = 0;
    std::int32_t nimber = -1;
    std::atomic<std::uint8_t> outcome{kUnknownOutcome};
    std::atomic<std::uint32_t> canonical{kNone};
    std::atomic<std::uint32_t> mate{kNone};
    std::atomic<std::uint32_t> concubine{kNone};
  };

  static constexpr std::uint8_t kUnknownOutcome = 0xFF;
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  const Entry& entry(GameId g) const;
  Entry& entry(GameId g);
  void check(GameId g) const;

  GameId intern_sorted(std::span<const GameId> sorted);
  std::uint64_t hash_options(std::span<const GameId> sorted) const;
  bool same_options(GameId id, std::span<const GameId> sorted) const;
  void grow_table();

  bool same_value(GameId a, GameId b);
  bool linked_forms(GameId a, GameId b);
  std::optional<GameId> known_canonical(GameId g) const;
  int structural_compare(GameId a, GameId b) const;

  static std::uint64_t pair_key(GameId a, GameId b) {
    if (b < a) std::swap(a, b);
    return (std::uint64_t{a.value} << 32) | b.value;
  }

  detail::StableStore<Entry> entries_;

  // Guarded by intern_mutex_.
  std::mutex intern_mutex_;
  std::vector<std::unique_ptr<GameId[]>> pool_chunks_;
  std::size_t pool_used_ = 0;
  std::size_t pool_capacity_ = 0;
  std::vector<std::uint32_t> table_;

  detail::Memo equal_memo_;
  detail::Memo sum_memo_;
  detail::Memo form_sum_memo_;

  std::mutex nimber_mutex_;
  std::vector<GameId> nimbers_;
};

}  // namespace misere
