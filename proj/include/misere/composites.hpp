#pragma once

#include <cstddef>
#include <vector>

#include "misere/census.hpp"
#include "misere/partition.hpp"

namespace misere {

struct CompositeEntry {
  std::size_t ordinal;
  GameId game;
  Parity parity;
  /// Number of primes in the largest prime partition.
  std::size_t prime_parts;
  std::size_t partitions;
  bool biprime;
  bool two_is_part;
};

struct CompositeReport {
  std::vector<CompositeEntry> composites;  // census order
  /// Members that passed the part-existence filter and were checked in full.
  std::size_t candidates = 0;

  std::vector<CompositeEntry> even() const;
  std::vector<CompositeEntry> odd() const;
};

/// Finds every composite member of the census.
///
/// A non-unit G = X + Y needs, for each option G', X or Y among the non-unit
/// parts of G'. Members are first screened with that test against the parts
/// of the previous day; only survivors are materialized and run through the
/// full parts computation.
CompositeReport scan_composites(const Census& census, PartitionEngine& engine, unsigned threads = 0);

/// Even composites only, in census order.
std::vector<CompositeEntry> even_composites(const Census& census, PartitionEngine& engine, unsigned threads = 0);

}  // namespace misere
