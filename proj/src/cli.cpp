#include "misere/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

#include "misere/census.hpp"
#include "misere/counting.hpp"
#include "misere/errors.hpp"
#include "misere/notation.hpp"
#include "misere/partition.hpp"

namespace misere {

namespace {

using json = nlohmann::json;

struct Options {
  std::string cache;
  unsigned threads = 0;
  std::string format = "text";
  std::vector<std::string> games;
  int day = 0;
  std::string out_file;
  bool canonical = false;
  bool summary = false;
};

class Session {
 public:
  Session(const Options& opts, std::ostream& out, std::ostream& err)
      : opts_(opts), out_(out), err_(err), engine_(arena_) {}

  bool json_output() const { return opts_.format == "json"; }

  GameId game(std::size_t i) { return parse_game(arena_, opts_.games.at(i)); }
  std::string show(GameId g) const { return format(arena_, g); }

  // Emits a payload: plain text lines or one JSON object.
  void emit(const std::string& command, const json& result, const std::string& text) {
    if (json_output()) {
      out_ << json{{"command", command}, {"result", result}}.dump() << '\n';
    } else {
      out_ << text << '\n';
    }
  }

  int canon() {
    const std::string s = show(arena_.canonicalize(game(0)));
    emit("canon", s, s);
    return kExitOk;
  }

  int outcome() {
    const std::string s(to_string(arena_.outcome(game(0))));
    emit("outcome", s, s);
    return kExitOk;
  }

  int eq() {
    const bool v = arena_.equals(game(0), game(1));
    emit("eq", v, v ? "true" : "false");
    return v ? kExitOk : kExitFalse;
  }

  int sum() {
    const std::string s = show(arena_.sum(game(0), game(1)));
    emit("sum", s, s);
    return kExitOk;
  }

  int mate() {
    GameId g = game(0);
    if (opts_.canonical) g = arena_.canonicalize(g);
    const GameId m = arena_.mate(g);
    const std::string form = show(m);
    const std::string canon = show(arena_.canonicalize(m));
    emit("mate", json{{"form", form}, {"canonical", canon}}, form + " = " + canon);
    return kExitOk;
  }

  int concubine() {
    const std::string s = show(arena_.concubine(arena_.canonicalize(game(0))));
    emit("concubine", s, s);
    return kExitOk;
  }

  int parity() {
    const std::string s(to_string(arena_.parity(game(0))));
    emit("parity", s, s);
    return kExitOk;
  }

  int birthday() {
    const int b = arena_.birthday(game(0));
    emit("birthday", b, std::to_string(b));
    return kExitOk;
  }

  int parts() {
    const PartsTable& table = engine_.parts(game(0));
    json rows = json::array();
    std::string text;
    for (const PartitionRecord& r : table.records) {
      const std::string x = show(r.part), y = show(r.counterpart);
      const std::string kind(to_string(r.kind));
      rows.push_back({{"part", x}, {"counterpart", y}, {"kind", kind}});
      if (!text.empty()) text += '\n';
      text += x + " + " + y + "  " + kind;
    }
    emit("parts", rows, text);
    return kExitOk;
  }

  int primes() {
    json rows = json::array();
    std::string text;
    for (const PrimePartition& p : engine_.prime_partitions(game(0))) {
      json primes = json::array();
      std::string line;
      for (GameId q : p.primes) {
        primes.push_back(show(q));
        line += (line.empty() ? "" : " + ") + show(q);
      }
      if (p.unit) line += " + 1";
      rows.push_back({{"primes", primes}, {"unit", p.unit}});
      if (!text.empty()) text += '\n';
      text += line;
    }
    emit("primes", rows, text);
    return kExitOk;
  }

  int upp() {
    const bool v = engine_.has_upp(game(0));
    emit("upp", v, v ? "true" : "false");
    return v ? kExitOk : kExitFalse;
  }

  int census() {
    if (opts_.day < 0) throw DomainError("day must be non-negative");
    const Census c = load_census(opts_.day);
    if (!opts_.out_file.empty()) c.save(opts_.out_file);
    const std::size_t n = c.n_count();
    const std::size_t total = c.size();
    emit("census",
         json{{"day", c.day()}, {"count", total}, {"n_positions", n}, {"p_positions", total - n}},
         "day " + std::to_string(c.day()) + ": " + std::to_string(total) + " games (" + std::to_string(total - n) +
             " P-positions, " + std::to_string(n) + " N-positions)");
    return kExitOk;
  }

  int count() {
    const int n = opts_.day;
    if (n < 0) throw DomainError("day must be non-negative");
    if (n > 7) throw CapacityError("count is limited to day 7");
    const Census base = load_census(std::max(0, n - 2));
    Recurrences rec(base);

    Tower t;
    if (n == 7) {
      t = rec.m_streaming([&](std::size_t done) {
        if (!json_output()) err_ << "\rprocessed " << done << " of " << base.size() << std::flush;
      });
      if (!json_output()) err_ << '\n';
    } else {
      t = rec.m(n);
      if (n == 6) t = t.normalized();
    }

    std::optional<std::string> decimal;
    if (t.level() <= 1 && n <= 5) decimal = t.to_decimal();

    json result{{"day", n}, {"terms", t.term_count()}, {"constant", t.constant().str()}};
    if (decimal) result["decimal"] = *decimal;
    if (opts_.summary) {
      std::string text = "terms " + std::to_string(t.term_count()) + " (" + std::to_string(t.term_count(-1)) +
                         " subtracted), constant " + t.constant().str();
      if (decimal) text += "\nvalue " + *decimal;
      emit("count", result, text);
    } else {
      const std::string expr = t.render();
      result["expression"] = expr;
      emit("count", result, decimal && t.level() > 0 ? expr + " = " + *decimal : expr);
    }
    return kExitOk;
  }

 private:
  Census load_census(int day) {
    if (day > 5) throw CapacityError("census enumeration is limited to day 5");
    std::filesystem::path file;
    if (!opts_.cache.empty()) {
      file = std::filesystem::path(opts_.cache) / ("census-day" + std::to_string(day) + ".txt");
      if (std::filesystem::exists(file)) return Census::load(file);
    }
    Census c = Census::enumerate(day, opts_.threads);
    if (!file.empty()) {
      std::filesystem::create_directories(file.parent_path());
      c.save(file);
    }
    return c;
  }

  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
  Arena arena_;
  PartitionEngine engine_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Impartial misere game calculator", "misere"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--cache", opts.cache, "Directory for census files");
  app.add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
  app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  using Handler = int (Session::*)();
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto game_command = [&](const char* name, const char* help, int arity, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("games", opts.games, arity == 1 ? "Game" : "Games")->required()->expected(arity);
    commands.emplace_back(sub, h);
    return sub;
  };
  game_command("canon", "Print the canonical form", 1, &Session::canon);
  game_command("outcome", "Print the outcome class (P or N)", 1, &Session::outcome);
  game_command("eq", "Test two games for equality", 2, &Session::eq);
  game_command("sum", "Print the canonical form of a sum", 2, &Session::sum);
  game_command("mate", "Print the mate of a form", 1, &Session::mate)
      ->add_flag("--canonical", opts.canonical, "Canonicalize before taking the mate");
  game_command("concubine", "Print the concubine of a game", 1, &Session::concubine);
  game_command("parity", "Print the parity (even or odd)", 1, &Session::parity);
  game_command("birthday", "Print the birthday", 1, &Session::birthday);
  game_command("parts", "List parts with counterparts and kinds", 1, &Session::parts);
  game_command("primes", "List prime partitions", 1, &Session::primes);
  game_command("upp", "Test for a unique prime partition", 1, &Session::upp);

  CLI::App* census = app.add_subcommand("census", "Enumerate the games born by a day");
  census->add_option("day", opts.day, "Day (at most 5)")->required();
  census->add_option("--out", opts.out_file, "Write the census file");
  commands.emplace_back(census, &Session::census);

  CLI::App* count = app.add_subcommand("count", "Count the games born by a day");
  count->add_option("day", opts.day, "Day (at most 7)")->required();
  count->add_flag("--summary", opts.summary, "Print term counts instead of the expression");
  commands.emplace_back(count, &Session::count);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    Session session(opts, out, err);
    for (const auto& [sub, handler] : commands) {
      if (sub->parsed()) return (session.*handler)();
    }
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace misere
