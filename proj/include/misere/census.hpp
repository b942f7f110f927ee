#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "misere/arena.hpp"

namespace misere {

/// All canonical values born by a given day, in a machine-independent order.
///
/// Members are identified by census-local ordinals. Each member is stored as
/// a bitmask over the ordinals of its options; since the members born by
/// day d form a prefix of the members born by day d + 1, a census of day n
/// fixes the ordinals of every earlier day as well.
///
/// The order is by birthday, then by the ascending sequence of option
/// ordinals compared lexicographically (a proper prefix sorts first). It
/// coincides with Arena::structural_less on canonical forms.
class Census {
 public:
  static constexpr int kMaxDay = 5;

  /// Enumerates days 0..day. Throws CapacityError for day > 5.
  static Census enumerate(int day, unsigned threads = 0);

  /// The census of prev.day() + 1.
  static Census extend(const Census& prev, unsigned threads = 0);

  int day() const { return day_; }
  std::size_t size() const { return masks_.size(); }

  /// Number of members born by day d (d <= day()).
  std::size_t born_by(int d) const { return prefix_.at(static_cast<std::size_t>(d)); }

  std::uint32_t options_mask(std::size_t i) const { return masks_[i]; }
  std::vector<std::size_t> options(std::size_t i) const;
  Outcome outcome(std::size_t i) const { return (flags_[i] & kFlagN) ? Outcome::N : Outcome::P; }
  int birthday(std::size_t i) const;

  /// |S^K|: number of members having member k as an option.
  std::size_t s_count(std::size_t k) const;
  /// Number of N-positions.
  std::size_t n_count() const { return n_count_; }
  /// Number of N-positions having 0 as an option.
  std::size_t n0_count() const { return n0_count_; }

  /// For the last enumerated day: the number of subsets of the previous day
  /// that simplify to member k, for each k born by day() - 2. Empty for
  /// censuses that were loaded rather than enumerated.
  const std::vector<std::uint64_t>& reducible_by_target() const { return reducible_; }

  /// Interns member i (and its followers) into the arena.
  GameId materialize(Arena& arena, std::size_t i) const;
  /// Interns the members 0..count-1; entry j is the id of member j.
  std::vector<GameId> materialize_prefix(Arena& arena, std::size_t count) const;

  /// Ordinal of the value of g, if it is born by day().
  std::optional<std::size_t> find(Arena& arena, GameId g) const;

  /// Strict member order on option masks of equal birthday.
  static bool mask_less(std::uint32_t a, std::uint32_t b);

  void save(const std::filesystem::path& path) const;
  /// Throws MalformedFile, ChecksumMismatch or VersionMismatch.
  static Census load(const std::filesystem::path& path);

 private:
  static constexpr std::uint8_t kFlagN = 1;
  static constexpr std::uint8_t kFlagZero = 2;

  static Census from_masks(int day, std::vector<std::uint32_t> masks, std::vector<std::size_t> prefix);
  void index();

  int day_ = 0;
  std::vector<std::uint32_t> masks_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::size_t> prefix_;     // prefix_[d] = members born by day d
  std::vector<std::size_t> s_counts_;   // indexed by members born by day - 1
  std::vector<std::uint64_t> reducible_;
  std::size_t n_count_ = 0;
  std::size_t n0_count_ = 0;
};

}  // namespace misere
