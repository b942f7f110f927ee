#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "misere/census.hpp"
#include "misere/counting.hpp"
#include "misere/errors.hpp"
#include "misere/notation.hpp"
#include "support/oracle.hpp"
#include "support/reference_data.hpp"

using namespace misere;
using namespace misere::testing;

namespace {

const Census& day5() {
  static const Census c = Census::enumerate(5);
  return c;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("misere-test-" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
}

}  // namespace

TEST_CASE("member counts") {
  for (int d = 0; d <= 4; ++d) CHECK(Census::enumerate(d).size() == kCensusCounts[static_cast<std::size_t>(d)]);
  const Census& c = day5();
  CHECK(c.size() == 4171780);
  for (int d = 0; d <= 5; ++d) CHECK(c.born_by(d) == kCensusCounts[static_cast<std::size_t>(d)]);
  CHECK(c.n0_count() == 1960962);
}

TEST_CASE("extend agrees with enumerate") {
  Census c = Census::enumerate(0);
  for (int d = 1; d <= 4; ++d) {
    c = Census::extend(c);
    const Census direct = Census::enumerate(d);
    REQUIRE(c.size() == direct.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.options_mask(i) == direct.options_mask(i));
  }
}

TEST_CASE("capacity") {
  CHECK_THROWS_AS(Census::enumerate(6), CapacityError);
  CHECK_THROWS_AS(Census::enumerate(-1), DomainError);
  CHECK_THROWS_AS(Census::extend(day5()), CapacityError);
}

TEST_CASE("members agree with the engine") {
  Arena arena;
  const Census c = Census::enumerate(4);
  const auto ids = c.materialize_prefix(arena, c.size());
  const auto values = all_values(arena, 4);
  CHECK(std::set<GameId>(ids.begin(), ids.end()) == std::set<GameId>(values.begin(), values.end()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(arena.is_canonical(ids[i]));
    CHECK(c.outcome(i) == arena.outcome(ids[i]));
    CHECK(c.birthday(i) == arena.birthday(ids[i]));
    CHECK(c.find(arena, ids[i]) == i);
    if (i > 0) CHECK(arena.structural_less(ids[i - 1], ids[i]));
  }
  CHECK_FALSE(c.find(arena, arena.canonicalize(parse_game(arena, "{2##1}#"))).has_value());
  CHECK_THROWS_AS(c.options(c.size()), InvalidHandle);
}

TEST_CASE("option index") {
  const Census& c = day5();
  Arena arena;
  for (const SCount& row : kDay5Table) {
    const Census c4 = Census::enumerate(4);
    const auto k = c4.find(arena, arena.canonicalize(parse_game(arena, row.game)));
    REQUIRE(k.has_value());
    CHECK(c4.s_count(*k) == row.value);
  }
  for (const SCount& row : kDay6Table) {
    const auto k = c.find(arena, arena.canonicalize(parse_game(arena, row.game)));
    REQUIRE(k.has_value());
    CHECK(c.s_count(*k) == row.value);
  }
  CHECK_THROWS_AS(c.s_count(c.born_by(4)), DomainError);
}

TEST_CASE("counts agree with the recurrences") {
  const Census c3 = Census::enumerate(3);
  const Census c4 = Census::enumerate(4);
  Recurrences rec(c3);
  CHECK(rec.nn(5).evaluate() == day5().n_count());
  CHECK(rec.nn0(5).evaluate() == day5().n0_count());
  CHECK(rec.nn0(4).evaluate() == c4.n0_count());
  CHECK(rec.m(5).evaluate() == day5().size());
}

TEST_CASE("reducible subsets") {
  const Census& c = day5();
  std::uint64_t total = 0;
  for (std::uint64_t r : c.reducible_by_target()) total += r;
  CHECK(c.reducible_by_target().size() == c.born_by(3));
  CHECK(total == (std::uint64_t{1} << 22) - c.size());
  CHECK(total == 22524);
}

TEST_CASE("thread count does not change the result") {
  const Census one = Census::enumerate(4, 1);
  const Census four = Census::enumerate(4, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one.options_mask(i) == four.options_mask(i));
  CHECK(one.reducible_by_target() == four.reducible_by_target());
}

TEST_CASE("save and load") {
  const Census c = Census::enumerate(4);
  const auto path = temp_file("census4.txt");
  c.save(path);
  const Census back = Census::load(path);
  CHECK(back.day() == 4);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back.options_mask(i) == c.options_mask(i));
    CHECK(back.outcome(i) == c.outcome(i));
  }
  for (std::size_t k = 0; k < c.born_by(3); ++k) CHECK(back.s_count(k) == c.s_count(k));
  CHECK(back.n0_count() == c.n0_count());

  const std::string text = slurp(path);
  const auto bad = temp_file("census-bad.txt");

  SUBCASE("truncated") {
    spit(bad, text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(Census::load(bad), ChecksumMismatch);
  }
  SUBCASE("edited") {
    std::string edited = text;
    edited[edited.find("1: 0")] = '2';
    spit(bad, edited);
    CHECK_THROWS_AS(Census::load(bad), ChecksumMismatch);
  }
  SUBCASE("bad magic") {
    spit(bad, "NOT-A-CENSUS" + text.substr(text.find(' ')));
    CHECK_THROWS_AS(Census::load(bad), MalformedFile);
  }
  SUBCASE("wrong version") {
    std::string edited = text;
    edited.replace(edited.find(" v1 "), 4, " v9 ");
    spit(bad, edited);
    CHECK_THROWS_AS(Census::load(bad), VersionMismatch);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(Census::load(temp_file("does-not-exist")), MalformedFile);
  }
  std::filesystem::remove(bad);
  std::filesystem::remove(path);
}
