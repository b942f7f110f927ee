#include <doctest.h>

#include "misere/errors.hpp"
#include "misere/tower.hpp"

using namespace misere;

namespace {

Tower p(long long e, int sign = 1) { return Tower::pow2(Tower(e), sign); }

}  // namespace

TEST_CASE("integers") {
  const Tower t(42);
  CHECK(t.level() == 0);
  CHECK(t.render() == "42");
  CHECK(t.evaluate() == 42);
  CHECK((Tower(5) - Tower(7)).render() == "-2");
}

TEST_CASE("powers of two") {
  const Tower t = p(22) - p(14) + Tower(4);
  CHECK(t.level() == 1);
  CHECK(t.evaluate() == (1 << 22) - (1 << 14) + 4);
  CHECK(t.render() == "2^22 - 2^14 + 4");

  // Small level-1 exponents collapse to integers.
  const Tower e = p(5) - Tower(10);
  const Tower q = Tower::pow2(e);
  CHECK(q.level() == 1);
  CHECK(q.render() == "2^22");

  const Tower big = Tower::pow2(p(100) - Tower(1));
  CHECK(big.level() == 2);
  CHECK(big.render() == "2^(2^100 - 1)");
  CHECK_THROWS_AS(big.evaluate(), CapacityError);
  CHECK_THROWS_AS(Tower::pow2(big), CapacityError);
  CHECK_THROWS_AS(Tower::pow2(Tower(-1)), DomainError);
}

TEST_CASE("normalization carries integer exponents") {
  const Tower t = (p(9) + p(9) - p(3) - p(3) - p(2)).normalized();
  CHECK(t.render() == "2^10 - 2^4 - 2^2");
  CHECK(t.evaluate() == 1024 - 16 - 4);
  CHECK((p(5) - p(5)).normalized().level() == 0);
  CHECK((p(4) + p(4) + p(4)).normalized().render() == "2^5 + 2^4");
}

TEST_CASE("normalization keeps multiplicities of tower exponents") {
  const Tower e = p(100) - Tower(3);
  const Tower t = (Tower::pow2(e) + Tower::pow2(e, -1) + Tower::pow2(e, -1) + Tower::pow2(e, -1)).normalized();
  REQUIRE(t.terms().size() == 1);
  CHECK(t.terms()[0].sign == -1);
  CHECK(t.terms()[0].multiplicity == 2);
  CHECK(t.render() == "-2*2^(2^100 - 3)");
  CHECK(t.render(true) == "-2^(2^100 - 3) - 2^(2^100 - 3)");
  CHECK(t.term_count() == 1);
  CHECK(t.expanded_term_count() == 2);
}

TEST_CASE("normalization normalizes exponents and sorts") {
  const Tower a = Tower::pow2(p(100) + p(90) + p(90));
  const Tower b = Tower::pow2(p(100) + p(92), -1);
  const Tower c = Tower::pow2(p(101) - Tower(1), -1);
  const Tower t = (a + b + c + Tower(7)).normalized();
  CHECK(t.render() == "-2^(2^101 - 1) - 2^(2^100 + 2^92) + 2^(2^100 + 2^91) + 7");
  CHECK(t.term_count(-1) == 2);
  CHECK(t.term_count(1) == 1);
  CHECK(t.normalized() == t);
}

TEST_CASE("normalization preserves value") {
  Tower t = Tower(17);
  for (int i = 0; i < 40; ++i) t += p(i % 13, i % 3 == 0 ? -1 : 1);
  const Tower n = t.normalized();
  CHECK(n.evaluate() == t.evaluate());
  CHECK(n.normalized() == n);
}

TEST_CASE("value comparison") {
  CHECK(Tower::compare_value(p(10), p(9) + p(9)) == 0);
  CHECK(Tower::compare_value(p(10), p(9) + p(8)) > 0);
  CHECK(Tower::compare_value(p(10) - Tower(1), p(10)) < 0);
  CHECK(Tower::compare_value(Tower(3), Tower(2)) > 0);
  CHECK(Tower::compare_value(p(1000) - p(999), p(999)) == 0);
  CHECK(Tower::compare_value(p(1000) - p(999) - Tower(1), p(998) + p(998)) < 0);
  CHECK_THROWS_AS(Tower::compare_value(Tower::pow2(p(100)), Tower(1)), DomainError);
}

TEST_CASE("equality and hashing") {
  const Tower a = p(7) - Tower(2);
  const Tower b = p(7) - Tower(2);
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK_FALSE(a == p(7));
}
