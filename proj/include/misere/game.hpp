#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string_view>

namespace misere {

/// Dense handle into an Arena. Id 0 is always the empty game.
struct GameId {
  std::uint32_t value = 0;

  constexpr GameId() = default;
  constexpr explicit GameId(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const GameId&) const = default;
};

inline constexpr GameId kZero{0};

/// Misère outcome: P if the player to move loses, N if the player to move wins.
enum class Outcome : std::uint8_t { P, N };

enum class Parity : std::uint8_t { Even, Odd };

constexpr std::string_view to_string(Outcome o) { return o == Outcome::P ? "P" : "N"; }
constexpr std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

}  // namespace misere

template <>
struct std::hash<misere::GameId> {
  std::size_t operator()(misere::GameId g) const noexcept { return std::hash<std::uint32_t>{}(g.value); }
};
