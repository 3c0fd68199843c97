#include "hexagons/board.hpp"

#include <algorithm>

namespace hexagons {

std::string_view color_name(Color c) {
  return kPalette[static_cast<std::size_t>(c)].name;
}

char color_code(Color c) { return kPalette[static_cast<std::size_t>(c)].code; }

std::optional<Color> color_from_name(std::string_view name) {
  for (const auto& entry : kPalette)
    if (entry.name == name) return entry.color;
  return std::nullopt;
}

std::optional<Color> color_from_code(char code) {
  for (const auto& entry : kPalette)
    if (entry.code == code) return entry.color;
  return std::nullopt;
}

std::string to_string(Position p) {
  return "(" + std::to_string(p.column) + "," + std::to_string(p.row) + ")";
}

void check_bounds(Position p) {
  if (!in_bounds(p))
    throw BoundsError("position " + to_string(p) + " is outside the " +
                      std::to_string(kColumns) + "x" + std::to_string(kRows) +
                      " board");
}

ActionSet::ActionSet(std::vector<Action> actions) : actions_(std::move(actions)) {
  for (const auto& a : actions_) check_bounds(a.position);
  std::sort(actions_.begin(), actions_.end(),
            [](const Action& a, const Action& b) { return a.position < b.position; });
  auto dup = std::adjacent_find(
      actions_.begin(), actions_.end(),
      [](const Action& a, const Action& b) { return a.position == b.position; });
  if (dup != actions_.end())
    throw InvalidActionSetError("tile " + to_string(dup->position) +
                                " is assigned twice in one action set");
}

void ActionSet::assign(Position p, Color c) {
  check_bounds(p);
  auto it = std::lower_bound(
      actions_.begin(), actions_.end(), p,
      [](const Action& a, const Position& q) { return a.position < q; });
  if (it != actions_.end() && it->position == p)
    it->color = c;
  else
    actions_.insert(it, Action{p, c});
}

std::optional<Color> ActionSet::color_at(Position p) const {
  auto it = std::lower_bound(
      actions_.begin(), actions_.end(), p,
      [](const Action& a, const Position& q) { return a.position < q; });
  if (it != actions_.end() && it->position == p) return it->color;
  return std::nullopt;
}

Color Board::at(Position p) const {
  check_bounds(p);
  return tiles_[index(p)];
}

void Board::set(Position p, Color c) {
  check_bounds(p);
  tiles_[index(p)] = c;
}

Board new_board() { return Board{}; }

Board paint(const Board& board, Position pos, Color color) {
  Board out = board;
  out.set(pos, color);
  return out;
}

Board apply_actions(const Board& board, const ActionSet& actions) {
  Board out = board;
  for (const auto& a : actions) out.set(a.position, a.color);
  return out;
}

ActionSet diff(const Board& prev, const Board& next) {
  ActionSet out;
  for (int c = 1; c <= kColumns; ++c)
    for (int r = 1; r <= kRows; ++r) {
      Position p{c, r};
      if (prev.at(p) != next.at(p)) out.assign(p, next.at(p));
    }
  return out;
}

std::vector<Action> painted(const Board& board) {
  std::vector<Action> out;
  for (int c = 1; c <= kColumns; ++c)
    for (int r = 1; r <= kRows; ++r) {
      Position p{c, r};
      if (board.at(p) != Color::white) out.push_back({p, board.at(p)});
    }
  return out;
}

std::string to_letter_grid(const Board& board) {
  std::string out;
  out.reserve(kTileCount + kRows);
  for (int r = 1; r <= kRows; ++r) {
    for (int c = 1; c <= kColumns; ++c) out.push_back(color_code(board.at({c, r})));
    out.push_back('\n');
  }
  return out;
}

Board parse_letter_rows(std::span<const std::string> rows) {
  if (rows.size() != static_cast<std::size_t>(kRows))
    throw UsageError("board grid needs " + std::to_string(kRows) + " rows, got " +
                     std::to_string(rows.size()));
  Board board;
  for (int r = 1; r <= kRows; ++r) {
    const auto& line = rows[static_cast<std::size_t>(r - 1)];
    if (line.size() != static_cast<std::size_t>(kColumns))
      throw UsageError("board grid row " + std::to_string(r) + " has " +
                       std::to_string(line.size()) + " cells, expected " +
                       std::to_string(kColumns));
    for (int c = 1; c <= kColumns; ++c) {
      char code = line[static_cast<std::size_t>(c - 1)];
      auto color = color_from_code(code);
      if (!color)
        throw UsageError(std::string("unknown color code '") + code + "' at " +
                         to_string({c, r}));
      board.set({c, r}, *color);
    }
  }
  return board;
}

Board parse_letter_grid(std::string_view text) {
  std::vector<std::string> rows;
  std::string current;
  for (char ch : text) {
    if (ch == '\r') continue;
    if (ch == '\n') {
      rows.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) rows.push_back(std::move(current));
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  return parse_letter_rows(rows);
}

}  // namespace hexagons
