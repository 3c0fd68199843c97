#include "hexagons/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hexagons {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

bool odd_column(int column) { return (column % 2 + 2) % 2 == 1; }

// Odd 1-based columns are 0-based even columns, which sit lower.
int parity0(int col0) { return col0 & 1; }

}  // namespace

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::up: return "up";
    case Direction::up_right: return "up-right";
    case Direction::down_right: return "down-right";
    case Direction::down: return "down";
    case Direction::down_left: return "down-left";
    case Direction::up_left: return "up-left";
  }
  return "up";
}

std::optional<Direction> direction_from_name(std::string_view name) {
  for (Direction d : kDirections)
    if (direction_name(d) == name) return d;
  return std::nullopt;
}

Direction turn(Direction d, int sixths) {
  int i = static_cast<int>(d);
  return kDirections[static_cast<std::size_t>(((i + sixths) % 6 + 6) % 6)];
}

Position step(Position p, Direction d) {
  const bool low = odd_column(p.column);
  switch (d) {
    case Direction::up: return {p.column, p.row - 1};
    case Direction::down: return {p.column, p.row + 1};
    case Direction::up_right: return {p.column + 1, low ? p.row : p.row - 1};
    case Direction::down_right: return {p.column + 1, low ? p.row + 1 : p.row};
    case Direction::up_left: return {p.column - 1, low ? p.row : p.row - 1};
    case Direction::down_left: return {p.column - 1, low ? p.row + 1 : p.row};
  }
  return p;
}

std::vector<Position> neighbors(Position p) {
  check_bounds(p);
  std::vector<Position> out;
  for (Direction d : kDirections) {
    Position q = step(p, d);
    if (in_bounds(q)) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cube to_cube(Position p) {
  const int col0 = p.column - 1;
  const int row0 = p.row - 1;
  const int x = col0;
  const int z = row0 - (col0 + parity0(col0)) / 2;
  return {x, -x - z, z};
}

Position from_cube(Cube c) {
  const int col0 = c.x;
  const int row0 = c.z + (col0 + parity0(col0)) / 2;
  return {col0 + 1, row0 + 1};
}

int hex_distance(Position a, Position b) {
  Cube ca = to_cube(a), cb = to_cube(b);
  return (std::abs(ca.x - cb.x) + std::abs(ca.y - cb.y) + std::abs(ca.z - cb.z)) / 2;
}

Point tile_center(Position p) {
  return {1.5 * (p.column - 1),
          kSqrt3 * (p.row - 1) + (odd_column(p.column) ? kSqrt3 / 2 : 0.0)};
}

std::string render_svg(const Board& board) {
  constexpr double kSize = 20.0;
  constexpr double kMargin = 4.0;
  const double width = kSize * (1.5 * (kColumns - 1) + 2.0) + 2 * kMargin;
  const double height = kSize * kSqrt3 * (kRows + 0.5) + 2 * kMargin;

  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.2f\" "
                "height=\"%.2f\" viewBox=\"0 0 %.2f %.2f\">\n",
                width, height, width, height);
  out += buf;
  for (int c = 1; c <= kColumns; ++c) {
    for (int r = 1; r <= kRows; ++r) {
      const Position p{c, r};
      const Point center = tile_center(p);
      const double cx = kMargin + kSize * (center.x + 1.0);
      const double cy = kMargin + kSize * (center.y + kSqrt3 / 2);
      std::snprintf(buf, sizeof buf, "<polygon data-col=\"%d\" data-row=\"%d\" points=\"", c, r);
      out += buf;
      for (int k = 0; k < 6; ++k) {
        const double angle = M_PI / 3.0 * k;
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", k ? " " : "",
                      cx + kSize * std::cos(angle), cy + kSize * std::sin(angle));
        out += buf;
      }
      const auto& entry = kPalette[static_cast<std::size_t>(board.at(p))];
      out += "\" fill=\"";
      out += entry.fill;
      out += "\" stroke=\"#9e9e9e\" stroke-width=\"1\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hexagons
