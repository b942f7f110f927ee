#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "misere/census.hpp"
#include "misere/counting.hpp"
#include "misere/errors.hpp"
#include "misere/notation.hpp"
#include "misere/partition.hpp"

namespace py = pybind11;
using namespace misere;

namespace {

// Games cross the boundary as notation strings; the session owns the arena.
class Session {
 public:
  Session() : engine_(arena_) {}

  GameId game(const std::string& text) { return parse_game(arena_, text); }
  std::string show(GameId g) const { return format(arena_, g); }

  std::string canon(const std::string& g) { return show(arena_.canonicalize(game(g))); }
  std::string outcome(const std::string& g) { return std::string(to_string(arena_.outcome(game(g)))); }
  bool equals(const std::string& g, const std::string& h) { return arena_.equals(game(g), game(h)); }
  bool linked(const std::string& g, const std::string& h) { return arena_.linked(game(g), game(h)); }
  std::string sum(const std::string& g, const std::string& h) { return show(arena_.sum(game(g), game(h))); }
  std::string mate(const std::string& g) { return show(arena_.mate(game(g))); }
  std::string concubine(const std::string& g) { return show(arena_.concubine(game(g))); }
  std::string parity(const std::string& g) { return std::string(to_string(arena_.parity(game(g)))); }
  int birthday(const std::string& g) { return arena_.birthday(game(g)); }
  int formal_birthday(const std::string& g) { return arena_.formal_birthday(game(g)); }

  std::vector<std::tuple<std::string, std::string, std::string>> parts(const std::string& g) {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const PartitionRecord& r : engine_.parts(game(g)).records) {
      out.emplace_back(show(r.part), show(r.counterpart), std::string(to_string(r.kind)));
    }
    return out;
  }

  std::optional<std::string> difference(const std::string& g, const std::string& h) {
    if (auto x = engine_.difference(game(g), game(h))) return show(*x);
    return std::nullopt;
  }

  bool is_unit(const std::string& g) { return engine_.is_unit(game(g)); }
  bool is_prime(const std::string& g) { return engine_.is_prime(game(g)); }
  bool has_upp(const std::string& g) { return engine_.has_upp(game(g)); }

  std::vector<std::pair<std::vector<std::string>, int>> prime_partitions(const std::string& g) {
    std::vector<std::pair<std::vector<std::string>, int>> out;
    for (const PrimePartition& p : engine_.prime_partitions(game(g))) {
      std::vector<std::string> primes;
      for (GameId q : p.primes) primes.push_back(show(q));
      out.emplace_back(std::move(primes), p.unit);
    }
    return out;
  }

 private:
  Arena arena_;
  PartitionEngine engine_;
};

py::dict census_summary(int day, unsigned threads) {
  Census c = [&] {
    py::gil_scoped_release release;
    return Census::enumerate(day, threads);
  }();
  py::dict d;
  d["day"] = c.day();
  d["count"] = c.size();
  d["n_positions"] = c.n_count();
  d["p_positions"] = c.size() - c.n_count();
  return d;
}

py::dict count(int day) {
  if (day < 0) throw DomainError("day must be non-negative");
  if (day > 6) throw CapacityError("count is limited to day 6 from Python; use the CLI for day 7");
  Tower t;
  {
    py::gil_scoped_release release;
    const Census base = Census::enumerate(std::max(0, day - 2));
    Recurrences rec(base);
    t = rec.m(day);
    if (day == 6) t = t.normalized();
  }
  py::dict d;
  d["day"] = day;
  d["expression"] = t.render();
  d["terms"] = t.term_count();
  d["constant"] = t.constant().str();
  if (day <= 5) d["value"] = py::int_(py::str(t.to_decimal()));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Impartial misere games: canonical forms, partitions and counts";

  // Translators registered later take precedence, so the base class goes first.
  auto& error = py::register_exception<Error>(m, "MisereError");
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
  py::register_exception<LoadError>(m, "LoadError", error.ptr());

  py::class_<Session>(m, "Session", "Owns the game store; games are passed in and out as notation strings.")
      .def(py::init<>())
      .def("canon", &Session::canon, py::arg("g"), "Canonical form of g")
      .def("outcome", &Session::outcome, py::arg("g"), "'P' or 'N'")
      .def("equals", &Session::equals, py::arg("g"), py::arg("h"))
      .def("linked", &Session::linked, py::arg("g"), py::arg("h"))
      .def("sum", &Session::sum, py::arg("g"), py::arg("h"), "Canonical form of g + h")
      .def("mate", &Session::mate, py::arg("g"), "Mate of the form g")
      .def("concubine", &Session::concubine, py::arg("g"))
      .def("parity", &Session::parity, py::arg("g"), "'even' or 'odd'")
      .def("birthday", &Session::birthday, py::arg("g"))
      .def("formal_birthday", &Session::formal_birthday, py::arg("g"))
      .def("parts", &Session::parts, py::arg("g"), "List of (part, counterpart, kind)")
      .def("difference", &Session::difference, py::arg("g"), py::arg("h"), "X with h + X = g, or None")
      .def("is_unit", &Session::is_unit, py::arg("g"))
      .def("is_prime", &Session::is_prime, py::arg("g"))
      .def("has_upp", &Session::has_upp, py::arg("g"))
      .def("prime_partitions", &Session::prime_partitions, py::arg("g"),
           "List of (even primes, unit) pairs, one per partition");

  m.def("normalize", [](const std::string& text) { return print(parse(text)); }, py::arg("text"),
        "Parse and reprint a game expression");
  m.def("census", &census_summary, py::arg("day"), py::arg("threads") = 0,
        "Counts of the games born by a day (at most 5)");
  m.def("count", &count, py::arg("day"), "Symbolic count of the games born by a day (at most 6)");
}
