#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hexagons/error.hpp"

namespace hexagons {

inline constexpr int kColumns = 18;
inline constexpr int kRows = 10;
inline constexpr int kTileCount = kColumns * kRows;

enum class Color : std::uint8_t { white, black, red, orange, yellow, green, blue, purple };

struct PaletteEntry {
  Color color;
  std::string_view name;
  char code;  // letter used by the board grid format
  std::string_view fill;
};

// The eighth slot (purple) is not confirmed by any source; everything that
// needs the palette reads it from here.
inline constexpr std::array<PaletteEntry, 8> kPalette{{
    {Color::white, "white", 'W', "#ffffff"},
    {Color::black, "black", 'K', "#222222"},
    {Color::red, "red", 'R', "#e53935"},
    {Color::orange, "orange", 'O', "#fb8c00"},
    {Color::yellow, "yellow", 'Y', "#fdd835"},
    {Color::green, "green", 'G', "#43a047"},
    {Color::blue, "blue", 'B', "#1e88e5"},
    {Color::purple, "purple", 'P', "#8e24aa"},
}};

std::string_view color_name(Color c);
char color_code(Color c);
std::optional<Color> color_from_name(std::string_view name);
std::optional<Color> color_from_code(char code);

// 1-based tile address: column counted from the left, row from the top.
// A Position may lie off the board while geometry is being computed; boards
// and actions only ever hold in-bounds positions.
struct Position {
  int column = 1;
  int row = 1;

  friend constexpr auto operator<=>(const Position&, const Position&) = default;
};

constexpr bool in_bounds(Position p) {
  return p.column >= 1 && p.column <= kColumns && p.row >= 1 && p.row <= kRows;
}

// Throws BoundsError when `p` is off the board.
void check_bounds(Position p);

std::string to_string(Position p);

struct Action {
  Position position;
  Color color = Color::white;

  friend constexpr auto operator<=>(const Action&, const Action&) = default;
};

// The set of paint events of one drawing step; at most one color per tile.
// Iteration order is by position (column, then row).
class ActionSet {
 public:
  ActionSet() = default;
  // Throws InvalidActionSetError on a repeated position, BoundsError when a
  // position is off the board.
  explicit ActionSet(std::vector<Action> actions);

  // Last writer wins.
  void assign(Position p, Color c);
  std::optional<Color> color_at(Position p) const;
  bool contains(Position p) const { return color_at(p).has_value(); }

  std::size_t size() const { return actions_.size(); }
  bool empty() const { return actions_.empty(); }
  auto begin() const { return actions_.begin(); }
  auto end() const { return actions_.end(); }
  const std::vector<Action>& actions() const { return actions_; }

  friend bool operator==(const ActionSet&, const ActionSet&) = default;

 private:
  std::vector<Action> actions_;
};

class Board {
 public:
  Board() { tiles_.fill(Color::white); }

  Color at(Position p) const;
  void set(Position p, Color c);
  std::span<const Color, kTileCount> tiles() const { return tiles_; }

  friend bool operator==(const Board&, const Board&) = default;

 private:
  static std::size_t index(Position p) {
    return static_cast<std::size_t>((p.row - 1) * kColumns + (p.column - 1));
  }

  std::array<Color, kTileCount> tiles_;
};

Board new_board();
Board paint(const Board& board, Position pos, Color color);
Board apply_actions(const Board& board, const ActionSet& actions);
// Tiles whose color differs between the boards, with their color in `next`.
ActionSet diff(const Board& prev, const Board& next);
// Non-white tiles, ordered by position.
std::vector<Action> painted(const Board& board);

// 10 lines of 18 color letters, top row first, each line '\n' terminated.
std::string to_letter_grid(const Board& board);
// Accepts the output of to_letter_grid; also tolerates a missing final
// newline and '\r'. Throws UsageError on a malformed grid.
Board parse_letter_grid(std::string_view text);
// Same as above for a grid already split into its 10 lines.
Board parse_letter_rows(std::span<const std::string> rows);

}  // namespace hexagons
