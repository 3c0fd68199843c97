#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexagons/board.hpp"

namespace hexagons {

// Layout: flat-top hexagons stacked in 18 vertical columns of 10. Odd columns
// (1, 3, 5, ...) sit half a tile lower than even columns.

enum class Direction { up, up_right, down_right, down, down_left, up_left };

// Clockwise order as drawn on screen, starting at `up`.
inline constexpr std::array<Direction, 6> kDirections{
    Direction::up,   Direction::up_right,  Direction::down_right,
    Direction::down, Direction::down_left, Direction::up_left};

std::string_view direction_name(Direction d);
std::optional<Direction> direction_from_name(std::string_view name);
// Rotate clockwise by `sixths` * 60 degrees (negative values rotate back).
Direction turn(Direction d, int sixths);

// One step in `d`. No bounds check: the result may be off the board.
Position step(Position p, Direction d);

// Hex-adjacent in-bounds tiles of an in-bounds position, ordered by position.
std::vector<Position> neighbors(Position p);

// Hex distance between two positions (on or off the board).
int hex_distance(Position a, Position b);

// Cube coordinates (x + y + z == 0), defined for any integer position.
struct Cube {
  int x = 0;
  int y = 0;
  int z = 0;
  friend constexpr bool operator==(const Cube&, const Cube&) = default;
};

Cube to_cube(Position p);
Position from_cube(Cube c);

// Tile center in units of the hexagon circumradius, y pointing down.
struct Point {
  double x = 0;
  double y = 0;
};
Point tile_center(Position p);

// Deterministic SVG document with one <polygon> per tile.
std::string render_svg(const Board& board);

}  // namespace hexagons
