#include "misere/partition.hpp"

#include <algorithm>
#include <set>

namespace misere {

namespace {

bool contains_id(std::span<const GameId> sorted, GameId g) {
  return std::binary_search(sorted.begin(), sorted.end(), g);
}

}  // namespace

const PartitionRecord* PartsTable::find(GameId part) const {
  auto it = std::lower_bound(records.begin(), records.end(), part,
                             [](const PartitionRecord& r, GameId p) { return r.part < p; });
  if (it == records.end() || it->part != part) return nullptr;
  return &*it;
}

// ---------------------------------------------------------------------------
// Parts

const PartsTable& PartitionEngine::parts(GameId g) {
  const GameId c = arena_.canonicalize(g);
  {
    std::lock_guard lock(mutex_);
    auto it = parts_.find(c);
    if (it != parts_.end()) return *it->second;
  }
  auto table = std::make_unique<const PartsTable>(compute_parts(c));
  std::lock_guard lock(mutex_);
  return *parts_.try_emplace(c, std::move(table)).first->second;
}

PartsTable PartitionEngine::compute_parts(GameId g) {
  const auto opts = arena_.options(g);
  if (opts.empty()) {
    const GameId one = arena_.nimber(1);
    return {g, {{kZero, kZero, PartKind::Novel}, {one, one, PartKind::Novel}}};
  }

  std::vector<const PartsTable*> sub;
  sub.reserve(opts.size());
  for (GameId o : opts) sub.push_back(&parts(o));

  std::set<GameId> candidates;
  for (const PartsTable* t : sub) {
    for (const PartitionRecord& r : t->records) candidates.insert(r.part);
  }

  // counterpart of x in the i-th option, if x is a part of it
  auto cp = [&](std::size_t i, GameId x) -> std::optional<GameId> {
    if (const PartitionRecord* r = sub[i]->find(x)) return r->counterpart;
    return std::nullopt;
  };

  std::map<GameId, GameId> found;
  auto record = [&](GameId x, GameId y) {
    for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
      auto [it, inserted] = found.try_emplace(a, b);
      if (!inserted && it->second != b) throw ConsistencyError("part with two distinct counterparts");
    }
  };

  auto matches = [&](GameId x, GameId y) {
    const auto xo = arena_.options(x);
    const auto yo = arena_.options(y);
    for (std::size_t i = 0; i < sub.size(); ++i) {
      const auto gy = cp(i, y);
      const auto gx = cp(i, x);
      if (!((gy && contains_id(xo, *gy)) || (gx && contains_id(yo, *gx)))) return false;
    }
    auto covered = [&](GameId opt, GameId other, std::span<const GameId> other_opts) {
      for (std::size_t i = 0; i < sub.size(); ++i) {
        if (cp(i, other) == opt) return true;
      }
      auto it = found.find(opt);
      return it != found.end() && contains_id(other_opts, it->second);
    };
    for (GameId xp : xo) {
      if (!covered(xp, y, yo)) return false;
    }
    for (GameId yp : yo) {
      if (!covered(yp, x, xo)) return false;
    }
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (GameId x : candidates) {
      if (found.count(x)) continue;
      const auto xo = arena_.options(x);

      std::size_t missing_in = sub.size();
      for (std::size_t i = 0; i < sub.size() && missing_in == sub.size(); ++i) {
        if (!sub[i]->has_part(x)) missing_in = i;
      }
      auto unknown_opt = std::find_if(xo.begin(), xo.end(), [&](GameId xp) { return !found.count(xp); });

      if (missing_in == sub.size() && unknown_opt == xo.end()) {
        std::vector<GameId> yopts;
        for (GameId xp : xo) yopts.push_back(found.at(xp));
        for (std::size_t i = 0; i < sub.size(); ++i) yopts.push_back(*cp(i, x));
        record(x, arena_.canonicalize(arena_.intern(yopts)));
        changed = true;
        continue;
      }

      std::vector<GameId> ys;
      if (missing_in != sub.size()) {
        for (GameId xp : xo) {
          if (auto y = cp(missing_in, xp)) ys.push_back(*y);
        }
      } else {
        for (std::size_t i = 0; i < sub.size(); ++i) {
          if (auto y = cp(i, *unknown_opt)) ys.push_back(*y);
        }
      }
      std::sort(ys.begin(), ys.end());
      ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
      for (GameId y : ys) {
        if (matches(x, y)) {
          record(x, y);
          changed = true;
          break;
        }
      }
    }
  }

  auto novel = [&](GameId x) {
    for (GameId xp : arena_.options(x)) {
      if (!found.count(xp)) return false;
    }
    return std::all_of(sub.begin(), sub.end(), [&](const PartsTable* t) { return t->has_part(x); });
  };

  PartsTable table{g, {}};
  table.records.reserve(found.size());
  for (auto [x, y] : found) {
    const PartKind kind = novel(x) || novel(y) ? PartKind::Novel : PartKind::Derived;
    table.records.push_back({x, y, kind});
  }
  return table;
}

std::optional<GameId> PartitionEngine::difference(GameId g, GameId h) {
  const PartsTable& table = parts(g);
  if (const PartitionRecord* r = table.find(arena_.canonicalize(h))) return r->counterpart;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Units and associates

bool PartitionEngine::is_unit(GameId g) {
  const GameId c = arena_.canonicalize(g);
  return c == kZero || c == arena_.nimber(1);
}

GameId PartitionEngine::associate(GameId g) { return arena_.sum(g, arena_.nimber(1)); }

bool PartitionEngine::associated(GameId g, GameId h) {
  const GameId c = arena_.canonicalize(g);
  return c == arena_.canonicalize(h) || c == associate(h);
}

GameId PartitionEngine::even_associate(GameId g) {
  const GameId c = arena_.canonicalize(g);
  return arena_.parity(c) == Parity::Even ? c : associate(c);
}

std::vector<GameId> PartitionEngine::proper_parts(GameId g) {
  const GameId c = arena_.canonicalize(g);
  const GameId a = associate(c);
  std::vector<GameId> out;
  for (const PartitionRecord& r : parts(c).records) {
    if (is_unit(r.part) || r.part == c || r.part == a) continue;
    out.push_back(r.part);
  }
  return out;
}

bool PartitionEngine::is_prime(GameId g) { return !is_unit(g) && proper_parts(g).empty(); }

// ---------------------------------------------------------------------------
// Prime partitions

void PartitionEngine::require_non_unit(GameId g, const char* what) {
  if (is_unit(g)) throw DomainError(std::string(what) + " is undefined for units");
}

const std::vector<PrimePartition>& PartitionEngine::prime_partitions(GameId g) {
  require_non_unit(g, "prime partition");
  const GameId c = arena_.canonicalize(g);
  {
    std::lock_guard lock(mutex_);
    auto it = partitions_.find(c);
    if (it != partitions_.end()) return *it->second;
  }
  std::vector<PrimePartition> result;
  const GameId even = even_associate(c);
  if (even == c) {
    result = compute_prime_partitions(c);
  } else {
    result = prime_partitions(even);
    for (PrimePartition& p : result) p.unit = 1;
  }
  auto stored = std::make_unique<const std::vector<PrimePartition>>(std::move(result));
  std::lock_guard lock(mutex_);
  return *partitions_.try_emplace(c, std::move(stored)).first->second;
}

std::vector<PrimePartition> PartitionEngine::compute_prime_partitions(GameId even) {
  const auto proper = proper_parts(even);
  if (proper.empty()) return {PrimePartition{{even}, 0}};

  const PartsTable& table = parts(even);
  std::set<std::vector<GameId>> seen;
  for (GameId x : proper) {
    const GameId y = table.find(x)->counterpart;
    if (y < x) continue;  // each split appears twice
    const auto& px = prime_partitions(x);
    const auto& py = prime_partitions(y);
    for (const PrimePartition& a : px) {
      for (const PrimePartition& b : py) {
        std::vector<GameId> merged;
        std::merge(a.primes.begin(), a.primes.end(), b.primes.begin(), b.primes.end(),
                   std::back_inserter(merged));
        seen.insert(std::move(merged));
      }
    }
  }
  std::vector<PrimePartition> out;
  for (const auto& primes : seen) out.push_back({primes, 0});
  return out;
}

bool PartitionEngine::has_upp(GameId g) { return prime_partitions(g).size() == 1; }

bool PartitionEngine::is_biprime(GameId g) {
  const auto& pp = prime_partitions(g);
  return pp.size() == 1 && pp.front().primes.size() == 2;
}

PartKind PartitionEngine::classify(GameId g, GameId x, GameId y) {
  if (!arena_.equals(arena_.sum(x, y), g)) throw DomainError("classify requires x + y = g");
  return parts(g).find(arena_.canonicalize(x))->kind;
}

bool PartitionEngine::diff_equals(FormalDifference a, FormalDifference b) {
  return arena_.sum(a.pos, b.neg) == arena_.sum(b.pos, a.neg);
}

}  // namespace misere
