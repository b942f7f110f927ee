#include "misere/notation.hpp"

#include <cctype>
#include <limits>

namespace misere {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GameExpr parse_all() {
    skip_space();
    if (at_end()) throw ParseError("empty input", pos_);
    GameExpr e = game();
    skip_space();
    if (!at_end()) unexpected("end of input");
    return e;
  }

 private:
  GameExpr game() {
    GameExpr e = atom();
    for (skip_space(); peek() == '+'; skip_space()) {
      ++pos_;
      e = GameExpr::sum(std::move(e), atom());
    }
    return e;
  }

  GameExpr atom() {
    skip_space();
    GameExpr e;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      e = GameExpr::nimber(number());
    } else if (c == '{') {
      e = set();
    } else if (c == '(') {
      ++pos_;
      e = game();
      skip_space();
      expect(')');
    } else {
      unexpected("a nimber, '{' or '('");
    }
    for (skip_space(); peek() == '#'; skip_space()) {
      ++pos_;
      e = GameExpr::sharp(std::move(e));
    }
    return e;
  }

  GameExpr set() {
    ++pos_;  // '{'
    std::vector<GameExpr> elems;
    skip_space();
    if (peek() == '}') {
      ++pos_;
      return GameExpr::set(std::move(elems));
    }
    while (true) {
      elems.push_back(game());
      skip_space();
      const char c = peek();
      if (c == ',') {
        ++pos_;
      } else if (c == '}') {
        ++pos_;
        return GameExpr::set(std::move(elems));
      } else if ((c == '{' || std::isdigit(static_cast<unsigned char>(c))) && ends_unambiguously()) {
        continue;
      } else {
        unexpected("',' or '}'");
      }
    }
  }

  // Juxtaposed elements are accepted only after '#' or '}', where no digit
  // run can be split two ways.
  bool ends_unambiguously() const {
    std::size_t i = pos_;
    while (i > 0 && std::isspace(static_cast<unsigned char>(text_[i - 1]))) --i;
    return i > 0 && (text_[i - 1] == '#' || text_[i - 1] == '}');
  }

  unsigned number() {
    const std::size_t start = pos_;
    unsigned long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<unsigned>(peek() - '0');
      if (v > std::numeric_limits<unsigned>::max()) throw ParseError("nimber too large", start);
      ++pos_;
    }
    if (std::isdigit(static_cast<unsigned char>(text_[start])) && pos_ - start > 1 && text_[start] == '0') {
      throw ParseError("leading zero in nimber", start);
    }
    return static_cast<unsigned>(v);
  }

  void expect(char c) {
    if (peek() != c) unexpected(std::string("'") + c + "'");
    ++pos_;
  }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    if (at_end()) throw ParseError("expected " + wanted + " but input ended", pos_);
    const char c = text_[pos_];
    std::string msg = "unexpected '" + std::string(1, c) + "', expected " + wanted;
    if (c == '_') {
      msg += " (subscripts are not supported; write sums with '+', e.g. 4_2 as 4 + 2)";
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '{') {
      msg += " (concatenated options are not supported; write sets with commas, e.g. 632 as {6, 3, 2})";
    }
    throw ParseError(msg, pos_);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GameExpr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const GameExpr& e) {
  switch (e.kind) {
    case GameExpr::Kind::Nimber:
      return std::to_string(e.value);
    case GameExpr::Kind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        out += print(e.children[i]);
      }
      return out + "}";
    }
    case GameExpr::Kind::Sharp: {
      const GameExpr& c = e.children[0];
      return c.kind == GameExpr::Kind::Sum ? "(" + print(c) + ")#" : print(c) + "#";
    }
    case GameExpr::Kind::Sum: {
      const GameExpr& rhs = e.children[1];
      const std::string right = rhs.kind == GameExpr::Kind::Sum ? "(" + print(rhs) + ")" : print(rhs);
      return print(e.children[0]) + " + " + right;
    }
  }
  return {};
}

GameId build(Arena& arena, const GameExpr& e) {
  switch (e.kind) {
    case GameExpr::Kind::Nimber:
      return arena.nimber(e.value);
    case GameExpr::Kind::Set: {
      std::vector<GameId> opts;
      for (const GameExpr& c : e.children) opts.push_back(build(arena, c));
      return arena.intern(opts);
    }
    case GameExpr::Kind::Sharp:
      return arena.sharp(build(arena, e.children[0]));
    case GameExpr::Kind::Sum:
      return arena.form_sum(build(arena, e.children[0]), build(arena, e.children[1]));
  }
  return kZero;
}

std::string format(const Arena& arena, GameId g) {
  if (auto m = arena.nimber_value(g)) return std::to_string(*m);
  const auto opts = arena.options(g);
  if (opts.size() == 1) return format(arena, opts[0]) + "#";
  const auto sorted = arena.sorted_options(g);
  std::string out = "{";
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    if (it != sorted.rbegin()) out += ", ";
    out += format(arena, *it);
  }
  return out + "}";
}

}  // namespace misere
