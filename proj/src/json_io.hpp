#pragma once

// JSON helpers shared by the dataset files, the service and the executor
// protocol. Not installed.

#include <string>

#include "hexagons/board.hpp"
#include "hexagons/metrics.hpp"
#include "json.hpp"

namespace hexagons::jsonio {

using nlohmann::json;

// Thrown on a value of the wrong shape; callers attach record context.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// [[column, row, "color"], ...]
json actions_to_json(const ActionSet& actions);
ActionSet actions_from_json(const json& j);

// Ten strings of eighteen color letters.
json board_to_json(const Board& board);
Board board_from_json(const json& j);

json score_to_json(const Score& s);
// {"steps": [...], "board": {...}, "action": {...}, "procedure_em": {...}}
json report_to_json(const ProcedureReport& r);

const json& require(const json& obj, const char* key);
std::string require_string(const json& obj, const char* key);
int require_int(const json& obj, const char* key);

}  // namespace hexagons::jsonio
