#include "misere/composites.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>
#include <unordered_map>

namespace misere {

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1u; }

 private:
  std::vector<std::uint64_t> words_;
};

struct Screen {
  std::vector<std::vector<std::size_t>> lists;  // non-unit parts of each option, as universe indices
  std::vector<Bits> sets;

  bool may_be_composite(std::uint32_t mask) const {
    if (mask == 0) return false;
    std::size_t first = 32;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto o = static_cast<std::size_t>(std::countr_zero(rest));
      if (lists[o].empty()) return false;
      if (first == 32 || lists[o].size() < lists[first].size()) first = o;
    }
    for (std::size_t x : lists[first]) {
      std::uint32_t unhit = 0;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        const int o = std::countr_zero(rest);
        if (!sets[o].test(x)) unhit |= 1u << o;
      }
      if (unhit == 0) return true;
      const auto u = static_cast<std::size_t>(std::countr_zero(unhit));
      for (std::size_t y : lists[u]) {
        bool all = true;
        for (std::uint32_t rest = unhit; rest != 0 && all; rest &= rest - 1) {
          all = sets[std::countr_zero(rest)].test(y);
        }
        if (all) return true;
      }
    }
    return false;
  }
};

}  // namespace

std::vector<CompositeEntry> CompositeReport::even() const {
  std::vector<CompositeEntry> out;
  std::copy_if(composites.begin(), composites.end(), std::back_inserter(out),
               [](const CompositeEntry& e) { return e.parity == Parity::Even; });
  return out;
}

std::vector<CompositeEntry> CompositeReport::odd() const {
  std::vector<CompositeEntry> out;
  std::copy_if(composites.begin(), composites.end(), std::back_inserter(out),
               [](const CompositeEntry& e) { return e.parity == Parity::Odd; });
  return out;
}

CompositeReport scan_composites(const Census& census, PartitionEngine& engine, unsigned threads) {
  Arena& arena = engine.arena();
  const std::size_t width = census.day() == 0 ? 0 : census.born_by(census.day() - 1);
  const std::vector<GameId> base = census.materialize_prefix(arena, width);

  Screen screen;
  std::unordered_map<GameId, std::size_t> universe;
  for (GameId g : base) {
    std::vector<std::size_t> list;
    for (const PartitionRecord& r : engine.parts(g).records) {
      if (engine.is_unit(r.part)) continue;
      list.push_back(universe.try_emplace(r.part, universe.size()).first->second);
    }
    screen.lists.push_back(std::move(list));
  }
  for (const auto& list : screen.lists) {
    Bits b(universe.size());
    for (std::size_t x : list) b.set(x);
    screen.sets.push_back(std::move(b));
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::vector<std::size_t>> found(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = census.size() * w / threads;
      const std::size_t hi = census.size() * (w + 1) / threads;
      for (std::size_t i = lo; i < hi; ++i) {
        if (screen.may_be_composite(census.options_mask(i))) found[w].push_back(i);
      }
    });
  }
  for (auto& t : pool) t.join();

  CompositeReport report;
  const GameId two = arena.nimber(2);
  for (const auto& chunk : found) {
    for (std::size_t i : chunk) {
      ++report.candidates;
      const GameId g = census.materialize(arena, i);
      if (engine.is_unit(g) || engine.is_prime(g)) continue;
      const auto& partitions = engine.prime_partitions(g);
      std::size_t largest = 0;
      for (const PrimePartition& p : partitions) largest = std::max(largest, p.primes.size());
      report.composites.push_back({i, g, arena.parity(g), largest, partitions.size(), engine.is_biprime(g),
                                   engine.parts(g).has_part(two)});
    }
  }
  return report;
}

std::vector<CompositeEntry> even_composites(const Census& census, PartitionEngine& engine, unsigned threads) {
  return scan_composites(census, engine, threads).even();
}

}  // namespace misere
