#include "oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace misere::testing {

TreeOracle::TreeOracle() { make({}); }

int TreeOracle::make(std::vector<int> children) {
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  auto [it, inserted] = index_.try_emplace(children, static_cast<int>(forms_.size()));
  if (inserted) {
    forms_.push_back(std::move(children));
    p_.push_back(-1);
  }
  return it->second;
}

int TreeOracle::import(const Arena& arena, GameId g) {
  if (auto it = imported_.find(g.value); it != imported_.end()) return it->second;
  std::vector<int> children;
  for (GameId o : arena.options(g)) children.push_back(import(arena, o));
  const int id = make(std::move(children));
  imported_.emplace(g.value, id);
  return id;
}

int TreeOracle::sum(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a > b) std::swap(a, b);
  if (auto it = sums_.find({a, b}); it != sums_.end()) return it->second;
  std::vector<int> children;
  const std::vector<int> left = forms_[a];
  const std::vector<int> right = forms_[b];
  for (int x : left) children.push_back(sum(x, b));
  for (int y : right) children.push_back(sum(a, y));
  const int id = make(std::move(children));
  sums_.emplace(std::pair{a, b}, id);
  return id;
}

bool TreeOracle::is_p(int g) {
  if (p_[g] >= 0) return p_[g] != 0;
  const std::vector<int> children = forms_[g];
  bool p = !children.empty();
  for (int c : children) {
    if (is_p(c)) {
      p = false;
      break;
    }
  }
  p_[g] = p ? 1 : 0;
  return p;
}

bool TreeOracle::linked_by_witness(int g, int h, const std::vector<int>& witnesses) {
  return std::any_of(witnesses.begin(), witnesses.end(),
                     [&](int t) { return is_p(sum(g, t)) && is_p(sum(h, t)); });
}

std::vector<GameId> all_forms(Arena& arena, int day) {
  if (day < 0 || day > 4) throw std::invalid_argument("all_forms supports days 0 to 4");
  std::vector<GameId> forms{arena.intern({})};
  for (int d = 1; d <= day; ++d) {
    const std::vector<GameId> prev = forms;
    if (prev.size() > 20) throw std::invalid_argument("too many forms");
    std::vector<GameId> next;
    for (std::uint32_t mask = 0; mask < (1u << prev.size()); ++mask) {
      std::vector<GameId> opts;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        if (mask >> i & 1u) opts.push_back(prev[i]);
      }
      next.push_back(arena.intern(opts));
    }
    forms = std::move(next);
  }
  return forms;
}

std::vector<GameId> all_values(Arena& arena, int day) {
  std::set<GameId> values;
  for (GameId f : all_forms(arena, day)) values.insert(arena.canonicalize(f));
  return {values.begin(), values.end()};
}

}  // namespace misere::testing
