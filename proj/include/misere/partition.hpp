#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "misere/arena.hpp"

namespace misere {

enum class PartKind : std::uint8_t { Novel, Derived };

constexpr std::string_view to_string(PartKind k) { return k == PartKind::Novel ? "novel" : "derived"; }

struct PartitionRecord {
  GameId part;
  GameId counterpart;
  PartKind kind;

  bool operator==(const PartitionRecord&) const = default;
};

/// All part/counterpart pairs of a canonical game, sorted by part id. The
/// set is closed under swapping part and counterpart.
struct PartsTable {
  GameId owner;
  std::vector<PartitionRecord> records;

  const PartitionRecord* find(GameId part) const;
  bool has_part(GameId part) const { return find(part) != nullptr; }
};

/// The element pos - neg of the difference group.
struct FormalDifference {
  GameId pos;
  GameId neg;
};

/// A prime partition up to association: every prime is replaced by its even
/// associate, and `unit` is 1 exactly when the owner is odd.
struct PrimePartition {
  std::vector<GameId> primes;  // canonical even primes, ascending by id
  int unit = 0;

  bool operator==(const PrimePartition&) const = default;
  auto operator<=>(const PrimePartition&) const = default;
};

/// Parts, differences and prime decompositions over an Arena. Results are
/// memoized per canonical game. Safe for concurrent use.
class PartitionEngine {
 public:
  explicit PartitionEngine(Arena& arena) : arena_(arena) {}

  Arena& arena() { return arena_; }

  /// Complete parts table of g (canonicalized first).
  const PartsTable& parts(GameId g);

  /// The canonical X with h + X = g, if it exists.
  std::optional<GameId> difference(GameId g, GameId h);

  bool is_unit(GameId g);
  GameId associate(GameId g);
  bool associated(GameId g, GameId h);
  /// The even member of {g, g + 1}.
  GameId even_associate(GameId g);

  /// Parts of g not associated with 0 or with g, ascending by id.
  std::vector<GameId> proper_parts(GameId g);
  bool is_prime(GameId g);

  /// Every prime partition of g up to association, sorted. Throws
  /// DomainError for units.
  const std::vector<PrimePartition>& prime_partitions(GameId g);
  bool has_upp(GameId g);
  /// Unique prime partition with exactly two primes.
  bool is_biprime(GameId g);

  /// Novel if x or y is a novel part of g. Throws DomainError unless x + y = g.
  PartKind classify(GameId g, GameId x, GameId y);

  bool diff_equals(FormalDifference a, FormalDifference b);

 private:
  PartsTable compute_parts(GameId g);
  std::vector<PrimePartition> compute_prime_partitions(GameId even);
  void require_non_unit(GameId g, const char* what);

  Arena& arena_;
  std::mutex mutex_;
  std::unordered_map<GameId, std::unique_ptr<const PartsTable>> parts_;
  std::unordered_map<GameId, std::unique_ptr<const std::vector<PrimePartition>>> partitions_;
};

}  // namespace misere
