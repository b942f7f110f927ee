#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "misere/arena.hpp"

namespace misere {

/// Abstract syntax of the game notation:
///
///   game  := atom ('+' atom)*
///   atom  := digits | '{' [game (',' game)*] '}' | '(' game ')' | atom '#'
///
/// Digits always form a single nimber ("12" is *12). Whitespace is ignored.
/// Inside braces, an element that ends in '#' or '}' may be followed by the
/// next element without a comma, so "{2##1}" is {2##, 1}. Subscript
/// and digit-concatenation shorthands are rejected.
struct GameExpr {
  enum class Kind { Nimber, Set, Sharp, Sum };

  Kind kind = Kind::Nimber;
  unsigned value = 0;              // Nimber
  std::vector<GameExpr> children;  // Set: elements; Sharp: one; Sum: two

  static GameExpr nimber(unsigned m) { return {Kind::Nimber, m, {}}; }
  static GameExpr set(std::vector<GameExpr> elems) { return {Kind::Set, 0, std::move(elems)}; }
  static GameExpr sharp(GameExpr e) { return {Kind::Sharp, 0, {std::move(e)}}; }
  static GameExpr sum(GameExpr a, GameExpr b) { return {Kind::Sum, 0, {std::move(a), std::move(b)}}; }

  bool operator==(const GameExpr&) const = default;
};

/// Throws ParseError carrying the byte offset of the problem.
GameExpr parse(std::string_view text);

/// Inverse of parse: parse(print(e)) == e.
std::string print(const GameExpr& e);

/// Interns the form denoted by e. Sums are built as forms, without
/// simplification.
GameId build(Arena& arena, const GameExpr& e);

inline GameId parse_game(Arena& arena, std::string_view text) { return build(arena, parse(text)); }

/// Notation for a form: nimbers as integers, singletons as x#, other sets in
/// braces with options in descending structural order.
std::string format(const Arena& arena, GameId g);

}  // namespace misere
