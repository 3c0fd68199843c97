#include "json_io.hpp"

#include <vector>

namespace hexagons::jsonio {

json actions_to_json(const ActionSet& actions) {
  json out = json::array();
  for (const auto& a : actions)
    out.push_back({a.position.column, a.position.row, std::string(color_name(a.color))});
  return out;
}

ActionSet actions_from_json(const json& j) {
  if (!j.is_array()) throw ShapeError("actions must be an array");
  std::vector<Action> actions;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
        !item[1].is_number_integer() || !item[2].is_string())
      throw ShapeError("action must be [column, row, \"color\"], got " + item.dump());
    auto color = color_from_name(item[2].get<std::string>());
    if (!color) throw ShapeError("unknown color \"" + item[2].get<std::string>() + "\"");
    Position p{item[0].get<int>(), item[1].get<int>()};
    if (!in_bounds(p)) throw ShapeError("position " + to_string(p) + " is off the board");
    actions.push_back({p, *color});
  }
  try {
    return ActionSet(std::move(actions));
  } catch (const Error& e) {
    throw ShapeError(e.what());
  }
}

json board_to_json(const Board& board) {
  json rows = json::array();
  const std::string grid = to_letter_grid(board);
  for (std::size_t i = 0; i < grid.size(); i += kColumns + 1) rows.push_back(grid.substr(i, kColumns));
  return rows;
}

Board board_from_json(const json& j) {
  if (!j.is_array()) throw ShapeError("board must be an array of row strings");
  std::vector<std::string> rows;
  for (const auto& r : j) {
    if (!r.is_string()) throw ShapeError("board rows must be strings");
    rows.push_back(r.get<std::string>());
  }
  try {
    return parse_letter_rows(rows);
  } catch (const Error& e) {
    throw ShapeError(e.what());
  }
}

json score_to_json(const Score& s) {
  return {{"precision", to_double(s.precision)},
          {"recall", to_double(s.recall)},
          {"f1", to_double(s.f1)}};
}

json report_to_json(const ProcedureReport& r) {
  json steps = json::array();
  int i = 0;
  for (const auto& s : r.steps)
    steps.push_back({{"index", ++i},
                     {"board", score_to_json(s.board_score)},
                     {"action", score_to_json(s.action_score)},
                     {"board_em", s.board_em},
                     {"action_em", s.action_em}});
  auto macro = [](const MacroScores& m) {
    return json{{"precision", to_double(m.precision)},
                {"recall", to_double(m.recall)},
                {"f1", to_double(m.f1)},
                {"em", to_double(m.em)}};
  };
  return {{"steps", std::move(steps)},
          {"board", macro(r.board)},
          {"action", macro(r.action)},
          {"procedure_em", {{"board", r.all_em(Mode::board)}, {"action", r.all_em(Mode::action)}}}};
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object()) throw ShapeError("expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ShapeError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw ShapeError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

int require_int(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number_integer()) throw ShapeError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace hexagons::jsonio
