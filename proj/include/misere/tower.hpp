#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace misere {

using BigInt = boost::multiprecision::cpp_int;

struct TowerTerm;

/// A signed sum of powers of two plus an integer constant, where each
/// exponent is itself a Tower one level down:
///
///   constant + sum of sign * multiplicity * 2^exponent
///
/// Level 0 is a plain integer. Levels 1 and 2 are supported, which is enough
/// for the expressions describing the games born by day 7.
class Tower {
 public:
  static constexpr int kMaxLevel = 2;
  static constexpr std::size_t kDefaultMaxBits = std::size_t{1} << 16;

  Tower() = default;
  Tower(BigInt value) : constant_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Tower(long long value) : constant_(value) {}          // NOLINT(google-explicit-constructor)

  /// 2^exponent. An exponent of level 1 whose value is a small integer is
  /// evaluated first, so 2^(2^5 - 10) becomes the level-1 tower 2^22.
  static Tower pow2(const Tower& exponent, int sign = 1, std::uint64_t multiplicity = 1);

  /// Assembles a tower from its parts; the level is derived from the terms.
  static Tower from_terms(BigInt constant, std::vector<TowerTerm> terms);

  int level() const { return level_; }
  const BigInt& constant() const { return constant_; }
  const std::vector<TowerTerm>& terms() const { return terms_; }

  Tower& operator+=(const Tower& other);
  Tower& operator-=(const Tower& other);
  Tower operator-() const;
  friend Tower operator+(Tower a, const Tower& b) { return a += b; }
  friend Tower operator-(Tower a, const Tower& b) { return a -= b; }

  /// Normalizes every exponent, merges terms with equal exponents, drops zero
  /// terms and sorts by exponent value, descending. Integer exponents are
  /// also carried (2^e + 2^e becomes 2^(e+1)), so those terms end with
  /// multiplicity 1; terms with tower exponents keep their combined
  /// multiplicity.
  Tower normalized() const;

  /// Number of terms, each counted once whatever its multiplicity.
  std::size_t term_count() const { return terms_.size(); }
  std::size_t term_count(int sign) const;
  /// Number of terms with multiplicities written out.
  std::size_t expanded_term_count() const;

  /// Exact value. Throws CapacityError if it may need more than max_bits.
  BigInt evaluate(std::size_t max_bits = kDefaultMaxBits) const;
  std::string to_decimal(std::size_t max_bits = kDefaultMaxBits) const;

  /// Terms in descending exponent order (negative before positive on ties),
  /// constant last: "2^22 - 2^14 + 4", "2^(2^5 - 1) - 3*2^9". With `expand`,
  /// multiplicities are written out as repeated terms instead.
  std::string render(bool expand = false) const;

  /// Sign of a - b for towers of level at most 1.
  static int compare_value(const Tower& a, const Tower& b);

  bool operator==(const Tower& other) const;
  std::size_t hash() const;

 private:
  void add(const Tower& other, int sign);
  void append_term(int sign, std::uint64_t multiplicity, Tower exponent);

  int level_ = 0;
  BigInt constant_;
  std::vector<TowerTerm> terms_;
};

struct TowerTerm {
  int sign;
  std::uint64_t multiplicity;
  Tower exponent;

  bool operator==(const TowerTerm&) const = default;
};

struct TowerHash {
  std::size_t operator()(const Tower& t) const { return t.hash(); }
};

}  // namespace misere
