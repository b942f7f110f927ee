#include "misere/counting.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "misere/errors.hpp"

namespace misere {

namespace {

// A level-1 tower with every term of multiplicity 1, flattened to
// [constant, 2 * e_1 + (sign_1 < 0), 2 * e_2 + (sign_2 < 0), ...].
using Flat = std::vector<long long>;

struct FlatHash {
  std::size_t operator()(const Flat& f) const {
    std::size_t h = f.size();
    for (long long v : f) h ^= static_cast<std::size_t>(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
  }
};

Flat flatten(const Tower& t) {
  if (t.level() != 1) throw ConsistencyError("expected a level-1 exponent");
  Flat f{t.constant().convert_to<long long>()};
  for (const TowerTerm& term : t.terms()) {
    if (term.multiplicity != 1) throw ConsistencyError("expected a normalized exponent");
    f.push_back(2 * term.exponent.constant().convert_to<long long>() + (term.sign < 0 ? 1 : 0));
  }
  return f;
}

Tower unflatten(const Flat& f) {
  std::vector<TowerTerm> terms;
  for (std::size_t i = 1; i < f.size(); ++i) {
    terms.push_back({(f[i] & 1) ? -1 : 1, 1, Tower(f[i] >> 1)});
  }
  return Tower::from_terms(BigInt(f[0]), std::move(terms));
}

// Sign of a - b, computed on balanced binary digits as in Tower::compare_value.
int compare_flat(const Flat& a, const Flat& b) {
  std::map<long long, long long> digits;
  for (std::size_t i = 1; i < a.size(); ++i) digits[a[i] >> 1] += (a[i] & 1) ? -1 : 1;
  for (std::size_t i = 1; i < b.size(); ++i) digits[b[i] >> 1] -= (b[i] & 1) ? -1 : 1;
  if (a[0] != b[0]) digits[0] += a[0] - b[0];
  int top = 0;
  for (auto it = digits.begin(); it != digits.end(); ++it) {
    const long long v = it->second;
    if (v == 0) continue;
    int r = 0;
    if (v & 1) r = (((v % 4) + 4) % 4) == 1 ? 1 : -1;
    const long long carry = (v - r) / 2;
    if (carry != 0) digits[it->first + 1] += carry;
    if (r != 0) top = r;
  }
  return top;
}

}  // namespace

Recurrences::Recurrences(const Census& base) : base_(base) {}

void Recurrences::require(bool ok, const std::string& what) const {
  if (!ok) {
    throw DomainError(what + " is out of range for a census of day " + std::to_string(base_.day()));
  }
}

std::size_t Recurrences::s_direct(int n, std::size_t k) const {
  if (n == base_.day()) return base_.s_count(k);
  std::size_t count = 0;
  const std::size_t end = base_.born_by(n);
  for (std::size_t i = 0; i < end; ++i) count += base_.options_mask(i) >> k & 1u;
  return count;
}

Tower Recurrences::m(int n) {
  const int b = base_.day();
  require(n >= 0 && n <= b + 2, "|M_" + std::to_string(n) + "|");
  if (n <= b) return Tower(static_cast<long long>(base_.born_by(n)));
  if (auto it = m_memo_.find(n); it != m_memo_.end()) return it->second;

  Tower t = Tower::pow2(m(n - 1));
  const std::size_t older = n >= 2 ? base_.born_by(n - 2) : 0;
  for (std::size_t g = 0; g < older; ++g) t -= r(n, g);
  return m_memo_.emplace(n, std::move(t)).first->second;
}

Tower Recurrences::r(int n, std::size_t g) {
  require(n >= 2 && n <= base_.day() + 2 && g < base_.born_by(n - 2), "|R_" + std::to_string(n) + "^G|");
  if (g == 0) return Tower::pow2(s(n - 1, 0)) - Tower::pow2(nn0(n - 1));
  return Tower::pow2(s(n - 1, g)) - Tower(1);
}

Tower Recurrences::rk(int n, std::size_t g, std::size_t k) {
  require(n >= 2 && n <= base_.day() + 1 && k < base_.born_by(n - 1), "|R_" + std::to_string(n) + "^{G,K}|");
  if (g >= 32 || !(base_.options_mask(k) >> g & 1u)) throw DomainError("G must be an option of K");
  Tower t = Tower::pow2(s(n - 1, g) - Tower(1));
  if (g == 0 && base_.outcome(k) == Outcome::N) t -= Tower::pow2(nn0(n - 1) - Tower(1));
  return t;
}

Tower Recurrences::s(int n, std::size_t k) {
  require(n >= 1 && n <= base_.day() + 1 && k < base_.born_by(n - 1), "|S_" + std::to_string(n) + "^K|");
  if (n <= base_.day()) return Tower(static_cast<long long>(s_direct(n, k)));
  const bool memo = k < 32;
  if (memo) {
    if (auto it = s_memo_.find({n, k}); it != s_memo_.end()) return it->second;
  }

  Tower t = Tower::pow2(m(n - 1) - Tower(1));
  for (std::uint32_t rest = base_.options_mask(k); rest != 0; rest &= rest - 1) {
    t -= rk(n, static_cast<std::size_t>(std::countr_zero(rest)), k);
  }
  if (n >= 2 && k < 32) {
    const std::size_t older = base_.born_by(n - 2);
    for (std::size_t h = 0; h < older; ++h) {
      if (base_.options_mask(h) >> k & 1u) t -= r(n, h);
    }
  }
  if (memo) s_memo_.emplace(std::pair{n, k}, t);
  return t;
}

Tower Recurrences::nn(int n) {
  const int b = base_.day();
  require(n >= 0 && n <= b + 2, "|N_" + std::to_string(n) + "|");
  if (auto it = nn_memo_.find(n); it != nn_memo_.end()) return it->second;
  if (n <= b) {
    long long count = 0;
    for (std::size_t i = 0; i < base_.born_by(n); ++i) count += base_.outcome(i) == Outcome::N;
    return nn_memo_.emplace(n, Tower(count)).first->second;
  }

  Tower t = Tower::pow2(m(n - 1)) - Tower::pow2(nn(n - 1)) + Tower(1);
  const std::size_t older = n >= 2 ? base_.born_by(n - 2) : 0;
  for (std::size_t g = 0; g < older; ++g) {
    if (base_.outcome(g) == Outcome::N) t -= r(n, g);
  }
  return nn_memo_.emplace(n, std::move(t)).first->second;
}

Tower Recurrences::nn0(int n) {
  const int b = base_.day();
  require(n >= 0 && n <= b + 2, "|N_" + std::to_string(n) + "^0|");
  if (auto it = nn0_memo_.find(n); it != nn0_memo_.end()) return it->second;
  if (n <= b) {
    long long count = 0;
    for (std::size_t i = 0; i < base_.born_by(n); ++i) {
      count += base_.outcome(i) == Outcome::N && (base_.options_mask(i) & 1u);
    }
    return nn0_memo_.emplace(n, Tower(count)).first->second;
  }

  Tower t = Tower::pow2(m(n - 1) - Tower(1)) - Tower::pow2(nn(n - 1) - Tower(1));
  const std::size_t older = n >= 2 ? base_.born_by(n - 2) : 0;
  for (std::size_t g = 0; g < older; ++g) {
    if (base_.outcome(g) == Outcome::N && (base_.options_mask(g) & 1u)) t -= r(n, g);
  }
  return nn0_memo_.emplace(n, std::move(t)).first->second;
}

Tower Recurrences::m_streaming(const std::function<void(std::size_t)>& progress) {
  const int b = base_.day();
  const int n = b + 2;
  if (b < 5) return m(n).normalized();

  // Signed multiplicity of each exponent appearing as a power of two.
  std::unordered_map<Flat, long long, FlatHash> coefs;
  auto add = [&](const Tower& exponent, long long c) {
    const Tower e = exponent.normalized();
    if (e.level() == 0) throw ConsistencyError("unexpected small exponent");
    coefs[flatten(e)] += c;
  };

  add(m(n - 1), 1);
  add(nn0(n - 1), 1);
  long long constant = 0;
  const std::size_t members = base_.size();
  for (std::size_t g = 0; g < members; ++g) {
    add(s(n - 1, g), -1);
    if (g != 0) ++constant;
    if (progress && (g + 1) % 65536 == 0) progress(g + 1);
  }
  if (progress) progress(members);

  std::vector<std::pair<Flat, long long>> terms;
  terms.reserve(coefs.size());
  for (auto& [f, c] : coefs) {
    if (c != 0) terms.emplace_back(f, c);
  }
  coefs.clear();

  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int c = compare_flat(a.first, b.first);
    return c != 0 ? c > 0 : a.second < b.second;
  });

  std::vector<TowerTerm> out;
  out.reserve(terms.size());
  for (const auto& [f, c] : terms) {
    out.push_back({c < 0 ? -1 : 1, static_cast<std::uint64_t>(c < 0 ? -c : c), unflatten(f)});
  }
  return Tower::from_terms(BigInt(constant), std::move(out));
}

}  // namespace misere
