#include "misere/tower.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "misere/errors.hpp"

namespace misere {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2));
}

long long to_small(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() / 4 || v < std::numeric_limits<long long>::min() / 4) {
    throw CapacityError("exponent too large");
  }
  return v.convert_to<long long>();
}

// Largest exponent value of a level-1 tower, or -1 when it has no terms.
long long max_exponent(const Tower& t) {
  long long m = -1;
  for (const TowerTerm& term : t.terms()) m = std::max(m, to_small(term.exponent.constant()));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and arithmetic

Tower Tower::pow2(const Tower& exponent, int sign, std::uint64_t multiplicity) {
  Tower e = exponent;
  if (e.level_ == 1 && max_exponent(e) < 62) e = Tower(e.evaluate());
  if (e.level_ == 0 && e.constant_ < 0) throw DomainError("negative exponent");
  if (e.level_ + 1 > kMaxLevel) throw CapacityError("tower level exceeds " + std::to_string(kMaxLevel));
  Tower t;
  t.level_ = e.level_ + 1;
  t.terms_.push_back({sign, multiplicity, std::move(e)});
  return t;
}

Tower Tower::from_terms(BigInt constant, std::vector<TowerTerm> terms) {
  Tower t(std::move(constant));
  for (TowerTerm& term : terms) {
    if (term.exponent.level_ + 1 > kMaxLevel) throw CapacityError("tower level exceeds " + std::to_string(kMaxLevel));
    t.append_term(term.sign, term.multiplicity, std::move(term.exponent));
  }
  return t;
}

void Tower::append_term(int sign, std::uint64_t multiplicity, Tower exponent) {
  level_ = std::max(level_, exponent.level_ + 1);
  terms_.push_back({sign, multiplicity, std::move(exponent)});
}

void Tower::add(const Tower& other, int sign) {
  if (sign > 0) constant_ += other.constant_;
  else constant_ -= other.constant_;
  for (const TowerTerm& t : other.terms_) append_term(t.sign * sign, t.multiplicity, t.exponent);
}

Tower& Tower::operator+=(const Tower& other) {
  add(other, 1);
  return *this;
}

Tower& Tower::operator-=(const Tower& other) {
  add(other, -1);
  return *this;
}

Tower Tower::operator-() const {
  Tower t;
  t.add(*this, -1);
  return t;
}

// ---------------------------------------------------------------------------
// Normalization

Tower Tower::normalized() const {
  if (level_ == 0) return *this;

  Tower out;
  out.constant_ = constant_;

  // Integer exponents: signed coefficient per exponent, then carry.
  std::map<BigInt, BigInt> small;
  // Tower exponents: signed multiplicity per normalized exponent.
  std::unordered_map<Tower, BigInt, TowerHash> large;
  std::vector<const Tower*> order;
  for (const TowerTerm& t : terms_) {
    const BigInt c = t.sign * BigInt(t.multiplicity);
    Tower e = t.exponent.normalized();
    if (e.level_ == 0) {
      small[e.constant_] += c;
    } else {
      auto [it, inserted] = large.try_emplace(std::move(e), 0);
      if (inserted) order.push_back(&it->first);
      it->second += c;
    }
  }

  for (auto it = small.begin(); it != small.end(); ++it) {
    const BigInt v = it->second;
    if (v == 0) continue;
    int r = 0;
    if (boost::multiprecision::bit_test(v, 0)) r = v > 0 ? 1 : -1;
    const BigInt carry = (v - r) / 2;
    if (carry != 0) small[it->first + 1] += carry;
    if (r != 0) out.append_term(r, 1, Tower(it->first));
  }
  for (const Tower* e : order) {
    const BigInt& v = large.at(*e);
    if (v == 0) continue;
    const BigInt magnitude = v < 0 ? BigInt(-v) : v;
    out.append_term(v < 0 ? -1 : 1, magnitude.convert_to<std::uint64_t>(), *e);
  }

  std::stable_sort(out.terms_.begin(), out.terms_.end(), [](const TowerTerm& a, const TowerTerm& b) {
    const int c = compare_value(a.exponent, b.exponent);
    return c != 0 ? c > 0 : a.sign < b.sign;
  });
  return out;
}

std::size_t Tower::expanded_term_count() const {
  std::size_t n = 0;
  for (const TowerTerm& t : terms_) n += t.multiplicity;
  return n;
}

std::size_t Tower::term_count(int sign) const {
  return static_cast<std::size_t>(
      std::count_if(terms_.begin(), terms_.end(), [sign](const TowerTerm& t) { return t.sign == sign; }));
}

// ---------------------------------------------------------------------------
// Evaluation and comparison

BigInt Tower::evaluate(std::size_t max_bits) const {
  BigInt value = constant_;
  for (const TowerTerm& t : terms_) {
    const BigInt e = t.exponent.evaluate(max_bits);
    if (e < 0) throw DomainError("negative exponent");
    if (e > max_bits) throw CapacityError("value exceeds " + std::to_string(max_bits) + " bits");
    BigInt p = BigInt(t.multiplicity) << e.convert_to<std::size_t>();
    if (t.sign > 0) value += p;
    else value -= p;
  }
  return value;
}

std::string Tower::to_decimal(std::size_t max_bits) const { return evaluate(max_bits).str(); }

int Tower::compare_value(const Tower& a, const Tower& b) {
  if (a.level_ > 1 || b.level_ > 1) throw DomainError("value comparison needs towers of level at most 1");
  if (a.level_ == 0 && b.level_ == 0) return a.constant_ < b.constant_ ? -1 : (b.constant_ < a.constant_ ? 1 : 0);

  // Write a - b in binary with digits in {-1, 0, 1}; its sign is that of the
  // most significant non-zero digit.
  std::map<long long, BigInt> digits;
  for (const TowerTerm& t : a.terms_) digits[to_small(t.exponent.constant())] += t.sign * BigInt(t.multiplicity);
  for (const TowerTerm& t : b.terms_) digits[to_small(t.exponent.constant())] -= t.sign * BigInt(t.multiplicity);
  const BigInt c = a.constant_ - b.constant_;
  if (c != 0) digits[0] += c;

  int top = 0;
  for (auto it = digits.begin(); it != digits.end(); ++it) {
    const BigInt v = it->second;
    if (v == 0) continue;
    int r = 0;
    if (boost::multiprecision::bit_test(v, 0)) {
      const BigInt m = ((v % 4) + 4) % 4;
      r = m == 1 ? 1 : -1;
    }
    const BigInt carry = (v - r) / 2;
    if (carry != 0) digits[it->first + 1] += carry;
    if (r != 0) top = r;
  }
  return top;
}

bool Tower::operator==(const Tower& other) const {
  return level_ == other.level_ && constant_ == other.constant_ && terms_ == other.terms_;
}

std::size_t Tower::hash() const {
  std::size_t h = static_cast<std::size_t>(level_);
  h = mix(h, static_cast<std::size_t>(static_cast<std::uint64_t>(constant_ & BigInt(0xFFFFFFFFFFFFFFFFull))));
  h = mix(h, constant_ < 0 ? 1 : 0);
  for (const TowerTerm& t : terms_) {
    h = mix(h, static_cast<std::size_t>(t.sign + 2));
    h = mix(h, t.multiplicity);
    h = mix(h, t.exponent.hash());
  }
  return h;
}

// ---------------------------------------------------------------------------
// Rendering

std::string Tower::render(bool expand) const {
  if (level_ == 0) return constant_.str();

  std::vector<const TowerTerm*> sorted;
  for (const TowerTerm& t : terms_) sorted.push_back(&t);
  std::stable_sort(sorted.begin(), sorted.end(), [](const TowerTerm* a, const TowerTerm* b) {
    if (a->exponent.level_ <= 1 && b->exponent.level_ <= 1) {
      const int c = compare_value(a->exponent, b->exponent);
      if (c != 0) return c > 0;
    }
    return a->sign < b->sign;
  });

  std::string out;
  for (const TowerTerm* t : sorted) {
    const std::string e = t->exponent.level_ == 0 ? t->exponent.render() : "(" + t->exponent.render() + ")";
    const std::uint64_t copies = expand ? t->multiplicity : 1;
    const std::string coefficient = !expand && t->multiplicity > 1 ? std::to_string(t->multiplicity) + "*" : "";
    for (std::uint64_t i = 0; i < copies; ++i) {
      if (out.empty()) out += t->sign < 0 ? "-" : "";
      else out += t->sign < 0 ? " - " : " + ";
      out += coefficient + "2^" + e;
    }
  }
  if (constant_ > 0) out += " + " + constant_.str();
  else if (constant_ < 0) out += " - " + BigInt(-constant_).str();
  return out;
}

}  // namespace misere
