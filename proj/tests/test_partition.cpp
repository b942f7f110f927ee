#include <doctest.h>

#include <algorithm>

#include "misere/errors.hpp"
#include "misere/notation.hpp"
#include "misere/partition.hpp"
#include "support/oracle.hpp"
#include "support/properties.hpp"
#include "support/reference_data.hpp"

using namespace misere;
using namespace misere::testing;

namespace {

struct Fixture {
  Arena arena;
  PartitionEngine engine{arena};

  GameId c(const char* text) { return arena.canonicalize(parse_game(arena, text)); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "parts of 0") {
  const PartsTable& t = engine.parts(kZero);
  REQUIRE(t.records.size() == 2);
  CHECK(t.records[0] == PartitionRecord{kZero, kZero, PartKind::Novel});
  CHECK(t.records[1].part == arena.nimber(1));
  CHECK(t.records[1].counterpart == arena.nimber(1));
}

TEST_CASE_FIXTURE(Fixture, "parts tables are symmetric and exact") {
  for (GameId g : all_values(arena, 4)) {
    const PartsTable& t = engine.parts(g);
    CHECK(t.owner == g);
    CHECK(std::is_sorted(t.records.begin(), t.records.end(),
                         [](const auto& a, const auto& b) { return a.part < b.part; }));
    for (const PartitionRecord& r : t.records) {
      CHECK(arena.sum(r.part, r.counterpart) == g);
      const PartitionRecord* back = t.find(r.counterpart);
      REQUIRE(back != nullptr);
      CHECK(back->counterpart == r.part);
    }
    CHECK(t.has_part(kZero));
    CHECK(t.has_part(arena.nimber(1)));
  }
}

TEST_CASE_FIXTURE(Fixture, "counterparts of 2 in 2# and 3#") {
  const PartitionRecord* r = engine.parts(c("2#")).find(arena.nimber(2));
  REQUIRE(r != nullptr);
  CHECK(r->counterpart == c("{2#, 2# + 1, 0}"));
  r = engine.parts(c("3#")).find(arena.nimber(2));
  REQUIRE(r != nullptr);
  CHECK(r->counterpart == c("{3#, 3# + 1, 1}"));
}

TEST_CASE_FIXTURE(Fixture, "2 + {3#, 3# + 1, 3 + 2} is not 3#") {
  CHECK_FALSE(arena.equals(parse_game(arena, "2 + {3#, 3# + 1, 3 + 2}"), c("3#")));

  // A distinguishing game, checked with the tree oracle.
  TreeOracle oracle;
  auto tree = [&](const char* text) { return oracle.import(arena, parse_game(arena, text)); };
  const int t = tree("{{2#, 2, 1}, {2#, 3, 2, 1}, {2#, 0}, {2#, 3, 0}, {2#, 3, 2, 0}, {2#, 3, 2, 1, 0}, 4, 2, 1}");
  const int sharp3 = tree("3#");
  const int x = oracle.make({sharp3, oracle.sum(sharp3, tree("1")), oracle.sum(tree("3"), tree("2"))});
  CHECK(oracle.outcome(oracle.sum(sharp3, t)) == Outcome::N);
  CHECK(oracle.outcome(oracle.sum(oracle.sum(tree("2"), x), t)) == Outcome::P);
}

TEST_CASE_FIXTURE(Fixture, "differences") {
  const auto values = all_values(arena, 3);
  for (GameId g : values) {
    CHECK(engine.difference(g, kZero) == g);
    CHECK(engine.difference(g, g) == kZero);
    for (GameId h : values) {
      const auto x = engine.difference(arena.sum(g, h), h);
      REQUIRE(x.has_value());
      CHECK(*x == g);
    }
  }
  CHECK_FALSE(engine.difference(kZero, arena.nimber(2)).has_value());

  const GameId g = c("(4 + 2)#");
  const auto p = engine.difference(g, arena.nimber(2));
  const auto q = engine.difference(g, arena.nimber(4));
  REQUIRE(p.has_value());
  REQUIRE(q.has_value());
  CHECK(engine.is_prime(*p));
  CHECK(engine.is_prime(*q));
  CHECK_FALSE(engine.associated(*p, *q));
}

TEST_CASE_FIXTURE(Fixture, "units and associates") {
  CHECK(engine.is_unit(kZero));
  CHECK(engine.is_unit(arena.nimber(1)));
  CHECK(engine.is_unit(c("1#")));
  CHECK_FALSE(engine.is_unit(arena.nimber(2)));
  for (GameId g : all_values(arena, 4)) {
    CHECK(engine.associate(engine.associate(g)) == g);
    CHECK(engine.associated(g, engine.associate(g)));
    const GameId e = engine.even_associate(g);
    CHECK(arena.parity(e) == Parity::Even);
    CHECK(engine.associated(g, e));
  }
}

TEST_CASE_FIXTURE(Fixture, "primes") {
  CHECK(engine.is_prime(arena.nimber(2)));
  CHECK(engine.is_prime(arena.nimber(3)));
  CHECK_FALSE(engine.is_prime(kZero));
  CHECK_FALSE(engine.is_prime(arena.nimber(1)));
  CHECK_FALSE(engine.is_prime(c("2#")));

  // A game with 0 or 1 as an option is prime unless it is a unit.
  for (GameId g : all_values(arena, 4)) {
    if (engine.is_unit(g)) continue;
    const auto opts = arena.options(g);
    const bool small_option = std::any_of(opts.begin(), opts.end(), [&](GameId o) {
      return o == kZero || o == arena.nimber(1);
    });
    if (small_option) CHECK(engine.is_prime(g));
    if (engine.is_prime(g)) {
      for (const PartitionRecord& r : engine.parts(g).records) {
        CHECK((engine.is_unit(r.part) || engine.associated(r.part, g)));
      }
    }
  }
}

TEST_CASE_FIXTURE(Fixture, "prime partitions") {
  const auto& two = engine.prime_partitions(arena.nimber(2));
  REQUIRE(two.size() == 1);
  CHECK(two[0].primes == std::vector<GameId>{arena.nimber(2)});
  CHECK(two[0].unit == 0);

  const auto& three = engine.prime_partitions(arena.nimber(3));
  REQUIRE(three.size() == 1);
  CHECK(three[0].primes == std::vector<GameId>{arena.nimber(2)});
  CHECK(three[0].unit == 1);

  CHECK_THROWS_AS(engine.prime_partitions(kZero), DomainError);
  CHECK_THROWS_AS(engine.prime_partitions(arena.nimber(1)), DomainError);

  CHECK(engine.is_biprime(c("2 + 2")));
  CHECK_FALSE(engine.is_biprime(arena.nimber(2)));
  CHECK_FALSE(engine.has_upp(c("(4 + 2)#")));

  for (GameId g : all_values(arena, 4)) {
    if (engine.is_unit(g)) continue;
    CHECK(engine.has_upp(g));
  }
}

TEST_CASE_FIXTURE(Fixture, "composites born by day 4") {
  for (const CompositeFact& f : kDay4Composites) {
    INFO(f.game);
    const GameId g = c(f.game);
    CHECK_FALSE(engine.is_prime(g));
    const auto& parts = engine.prime_partitions(g);
    REQUIRE(parts.size() == 1);
    std::vector<GameId> expected;
    for (const char* p : f.primes) expected.push_back(engine.even_associate(c(p)));
    std::sort(expected.begin(), expected.end());
    CHECK(parts[0].primes == expected);
    for (GameId p : parts[0].primes) CHECK(engine.is_prime(p));
  }
}

TEST_CASE_FIXTURE(Fixture, "classification") {
  CHECK(engine.classify(kZero, kZero, kZero) == PartKind::Novel);
  CHECK_THROWS_AS(engine.classify(kZero, arena.nimber(2), kZero), DomainError);
  for (const CompositeFact& f : kDay4Composites) {
    const GameId g = c(f.game);
    for (const PartitionRecord& r : engine.parts(g).records) {
      CHECK(engine.classify(g, r.part, r.counterpart) == r.kind);
    }
  }
}

TEST_CASE_FIXTURE(Fixture, "formal differences") {
  const GameId two = arena.nimber(2);
  const GameId one = arena.nimber(1);
  CHECK(engine.diff_equals({two, two}, {kZero, kZero}));
  CHECK(engine.diff_equals({one, kZero}, {kZero, one}));
  CHECK_FALSE(engine.diff_equals({two, kZero}, {kZero, two}));
  const GameId x = c("2#");
  CHECK(engine.diff_equals({arena.sum(x, two), two}, {x, kZero}));
}

TEST_CASE_FIXTURE(Fixture, "property: parts against exhaustive sums") {
  const SuiteResult r = parts_suite(engine);
  INFO(r.name << ": " << (r.failures.empty() ? std::string() : r.failures.front()));
  CHECK(r.ok());
  CHECK(r.assertions >= 1000);
}
