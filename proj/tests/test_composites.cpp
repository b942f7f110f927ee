#include <doctest.h>

#include <algorithm>
#include <deque>

#include "misere/composites.hpp"
#include "misere/notation.hpp"
#include "support/reference_data.hpp"

using namespace misere;
using namespace misere::testing;

namespace {

const Census& census(int day) {
  static std::deque<Census> days;  // stable references
  while (static_cast<int>(days.size()) <= day) {
    days.push_back(days.empty() ? Census::enumerate(0) : Census::extend(days.back()));
  }
  return days[static_cast<std::size_t>(day)];
}

struct Fixture {
  Arena arena;
  PartitionEngine engine{arena};

  // Brute force: a non-unit member with a part that is neither a unit nor associated with it.
  bool composite(GameId g) {
    if (engine.is_unit(g)) return false;
    return !engine.proper_parts(g).empty();
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "scan agrees with the parts tables") {
  for (int day = 0; day <= 4; ++day) {
    const Census& c = census(day);
    const CompositeReport report = scan_composites(c, engine);
    const auto ids = c.materialize_prefix(arena, c.size());
    std::vector<std::size_t> expected, found;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (composite(ids[i])) expected.push_back(i);
    }
    for (const CompositeEntry& e : report.composites) {
      found.push_back(e.ordinal);
      CHECK(e.game == ids[e.ordinal]);
      CHECK(e.parity == arena.parity(e.game));
      CHECK(e.partitions == engine.prime_partitions(e.game).size());
      CHECK(e.biprime == engine.is_biprime(e.game));
    }
    INFO("day " << day);
    CHECK(found == expected);
    CHECK(report.even().size() + report.odd().size() == report.composites.size());
  }
}

TEST_CASE_FIXTURE(Fixture, "even composites born by day 4") {
  const auto even = even_composites(census(4), engine);
  REQUIRE(even.size() == kDay4Composites.size());
  for (const CompositeFact& f : kDay4Composites) {
    const GameId g = arena.canonicalize(parse_game(arena, f.game));
    const bool listed = std::any_of(even.begin(), even.end(), [&](const CompositeEntry& e) { return e.game == g; });
    CHECK_MESSAGE(listed, f.game);
  }
}

TEST_CASE_FIXTURE(Fixture, "odd composites are one day behind the even ones") {
  std::size_t previous_even = 0;
  for (int day = 0; day <= 4; ++day) {
    const CompositeReport report = scan_composites(census(day), engine);
    INFO("day " << day);
    CHECK(report.odd().size() == previous_even);
    previous_even = report.even().size();
  }
}

TEST_CASE_FIXTURE(Fixture, "odd members are one day behind the even ones") {
  const Census& c = census(4);
  const auto ids = c.materialize_prefix(arena, c.size());
  std::size_t previous_even = 0;
  for (int day = 0; day <= 4; ++day) {
    std::size_t odd = 0, even = 0;
    for (std::size_t i = 0; i < c.born_by(day); ++i) {
      (arena.parity(ids[i]) == Parity::Odd ? odd : even) += 1;
    }
    INFO("day " << day);
    CHECK(odd == previous_even);
    previous_even = even;
  }
}
