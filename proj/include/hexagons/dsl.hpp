#pragma once

// hexa: a small drawing language over the hexagon board. Its constructs
// follow the kinds of abstraction people use when describing drawings:
// objects (named regions, lines, flowers), bounded iteration (`repeat`),
// conditional iteration (`while`, `to-edge`, `until-color`), conditionals
// (`if`), functions (`define`), symmetry (`reflect`, `rotate`) and recursion
// (`recurse`). The grammar is in docs/grammar.ebnf.

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hexagons/board.hpp"
#include "hexagons/error.hpp"
#include "hexagons/geometry.hpp"

namespace hexagons::dsl {

class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_color, unknown_definition, bounds, invalid_value };

  ParseError(Kind kind, int line, int column, std::string message,
             std::vector<std::string> expected = {});

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Kind kind_;
  int line_;
  int column_;
  std::string message_;
  std::vector<std::string> expected_;
};

class EvalError : public Error {
 public:
  enum class Kind { empty_region, depth, invalid_axis, unknown_object, invalid_value };

  EvalError(Kind kind, std::string what, bool off_board = false)
      : Error(std::move(what)), kind_(kind), off_board_(off_board) {}
  Kind kind() const { return kind_; }
  // For empty_region: the region had tiles, all of them off the board.
  bool off_board() const { return off_board_; }

 private:
  Kind kind_;
  bool off_board_;
};

// Column/row displacement applied to positions, in board coordinates.
struct Delta {
  int columns = 0;
  int rows = 0;
  friend bool operator==(const Delta&, const Delta&) = default;
};

// A literal or the name of a parameter bound at evaluation time.
template <typename T>
using Ref = std::variant<T, std::string>;

using ColorRef = Ref<Color>;
using PosRef = Ref<Position>;
using IntRef = Ref<int>;
using DeltaRef = Ref<Delta>;

struct LineLength {
  enum class Kind { count, to_edge, until_color };
  Kind kind = Kind::count;
  IntRef count = 1;
  ColorRef until = Color::white;
  friend bool operator==(const LineLength&, const LineLength&) = default;
};

struct TileRegion {
  PosRef tile;
  friend bool operator==(const TileRegion&, const TileRegion&) = default;
};
struct LineRegion {
  PosRef start;
  Direction direction = Direction::down;
  LineLength length;
  friend bool operator==(const LineRegion&, const LineRegion&) = default;
};
// Center plus its six neighbors.
struct FlowerRegion {
  PosRef center;
  friend bool operator==(const FlowerRegion&, const FlowerRegion&) = default;
};
// The six neighbors only.
struct NeighborsRegion {
  PosRef center;
  friend bool operator==(const NeighborsRegion&, const NeighborsRegion&) = default;
};
// All tiles within `radius` steps of the center.
struct HexagonRegion {
  PosRef center;
  IntRef radius = 1;
  friend bool operator==(const HexagonRegion&, const HexagonRegion&) = default;
};
struct ColumnRegion {
  IntRef column = 1;
  std::optional<IntRef> from;
  std::optional<IntRef> to;
  friend bool operator==(const ColumnRegion&, const ColumnRegion&) = default;
};
struct RowRegion {
  IntRef row = 1;
  std::optional<IntRef> from;
  std::optional<IntRef> to;
  friend bool operator==(const RowRegion&, const RowRegion&) = default;
};
struct ListRegion {
  std::vector<PosRef> tiles;
  friend bool operator==(const ListRegion&, const ListRegion&) = default;
};
struct ObjectRegion {
  std::string name;
  friend bool operator==(const ObjectRegion&, const ObjectRegion&) = default;
};

using RegionExpr = std::variant<TileRegion, LineRegion, FlowerRegion, NeighborsRegion,
                                HexagonRegion, ColumnRegion, RowRegion, ListRegion,
                                ObjectRegion>;

// Predicate over one tile of the current board.
struct TileTest {
  enum class Kind { color, painted, edge, odd_column, even_column, odd_row, even_row };
  Kind kind = Kind::color;
  PosRef tile;
  ColorRef color = Color::white;
  friend bool operator==(const TileTest&, const TileTest&) = default;
};

struct Condition {
  enum class Op { test, negate, all, any };
  Op op = Op::test;
  TileTest test;
  std::vector<Condition> operands;
  friend bool operator==(const Condition&, const Condition&) = default;
};

struct AxisExpr {
  enum class Kind { vertical_midline, horizontal_midline, line };
  Kind kind = Kind::vertical_midline;
  PosRef through;
  // Angle of the line, degrees counterclockwise from horizontal as drawn.
  IntRef degrees = 90;
  friend bool operator==(const AxisExpr&, const AxisExpr&) = default;
};

struct Statement;
using Block = std::vector<Statement>;

struct PaintStmt {
  RegionExpr region;
  ColorRef color;
  friend bool operator==(const PaintStmt&, const PaintStmt&) = default;
};

struct ColorCycle {
  std::string variable;
  std::vector<ColorRef> colors;
  friend bool operator==(const ColorCycle&, const ColorCycle&) = default;
};

struct RepeatStmt {
  IntRef count = 1;
  DeltaRef offset = Delta{};
  std::optional<ColorCycle> cycle;
  Block body;
  friend bool operator==(const RepeatStmt&, const RepeatStmt&) = default;
};

struct WhileStmt {
  Condition condition;
  DeltaRef offset = Delta{};
  Block body;
  friend bool operator==(const WhileStmt&, const WhileStmt&) = default;
};

struct IfStmt {
  Condition condition;
  Block then_body;
  std::optional<Block> else_body;
  friend bool operator==(const IfStmt&, const IfStmt&) = default;
};

enum class ParamType { color, pos, delta, integer };

using Argument = std::variant<ColorRef, PosRef, DeltaRef, IntRef>;

struct CallStmt {
  std::string name;
  std::vector<Argument> arguments;
  friend bool operator==(const CallStmt&, const CallStmt&) = default;
};

// Transports the colors of `region` onto its mirror image. For a region that
// is closed under the mirror this swaps the two halves.
struct ReflectStmt {
  RegionExpr region;
  AxisExpr axis;
  friend bool operator==(const ReflectStmt&, const ReflectStmt&) = default;
};

// Transports the colors of `region` onto its image under a rotation of
// `sixths` * 60 degrees clockwise about the center tile.
struct RotateStmt {
  RegionExpr region;
  PosRef center;
  IntRef sixths = 1;
  friend bool operator==(const RotateStmt&, const RotateStmt&) = default;
};

// Evaluates the body at levels 0..depth-1; each level is the previous one
// shifted by `offset`, with line lengths and hexagon radii increased by
// `grow` and line directions turned by `turn` sixths. Stops early once a
// level falls entirely off the board.
struct RecurseStmt {
  IntRef depth = 1;
  DeltaRef offset = Delta{};
  int grow = 0;
  int turn = 0;
  Block body;
  friend bool operator==(const RecurseStmt&, const RecurseStmt&) = default;
};

struct Statement {
  std::variant<PaintStmt, RepeatStmt, WhileStmt, IfStmt, CallStmt, ReflectStmt, RotateStmt,
               RecurseStmt>
      node;
  int line = 0;
  friend bool operator==(const Statement& a, const Statement& b) { return a.node == b.node; }
};

struct Param {
  std::string name;
  ParamType type = ParamType::pos;
  friend bool operator==(const Param&, const Param&) = default;
};

struct FunctionDef {
  std::string name;
  std::vector<Param> params;
  Block body;
  friend bool operator==(const FunctionDef&, const FunctionDef&) = default;
};

struct ObjectDef {
  std::string name;
  RegionExpr region;
  friend bool operator==(const ObjectDef&, const ObjectDef&) = default;
};

struct Program {
  std::vector<ObjectDef> objects;
  std::vector<FunctionDef> functions;
  std::vector<Statement> statements;
  friend bool operator==(const Program&, const Program&) = default;
};

Program parse_program(std::string_view text);

// Canonical source. parse_program(print_program(p)) == p.
std::string print_program(const Program& program);
// One-line form of a single statement, usable as a step's instruction text.
std::string print_statement(const Statement& statement);

using Region = std::set<Position>;

struct Axis {
  AxisExpr::Kind kind = AxisExpr::Kind::vertical_midline;
  Position through;
  int degrees = 90;
};

// Mirror image of each tile; images off the board are dropped. The vertical
// midline lies between columns 9 and 10 and maps (c, r) to (19 - c, r). The
// horizontal midline maps even columns r -> 11 - r and odd columns
// r -> 10 - r. Line axes pass through a tile center at 0, 30, 90 or 150
// degrees. Throws EvalError(invalid_axis) for any other angle.
Region reflect_region(const Region& region, const Axis& axis);

// Rotation by sixths * 60 degrees clockwise (as drawn) about the center
// tile; images off the board are dropped. Any integer is accepted here; the
// statement form restricts it to 1..5.
Region rotate_region(const Region& region, Position center, int sixths);

using ObjectTable = std::map<std::string, RegionExpr, std::less<>>;

// In-bounds tiles of a parameter-free region expression. Throws
// EvalError(unknown_object) for a name missing from `objects`.
Region expand_region(const RegionExpr& expr, const Board& board,
                     const ObjectTable& objects = {});

struct Step {
  ActionSet actions;
  Board board;
  std::string source;
};

// One step per top-level statement, each applied to the previous board.
std::vector<Step> eval_program(const Program& program, const Board& initial);

inline constexpr int kMaxRecursionDepth = 64;
inline constexpr int kMaxCallDepth = 64;
inline constexpr int kMaxLoopIterations = 1024;

}  // namespace hexagons::dsl
