#include <algorithm>
#include <cmath>

#include "hexagons/dsl.hpp"

namespace hexagons::dsl {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kSqrt3 = 1.7320508075688772;

// A position argument remembers the translation in force when it was bound,
// so that only translations applied later move it.
struct BoundPosition {
  Position position;
  int columns = 0;
  int rows = 0;
};

using Value = std::variant<Color, BoundPosition, Delta, int>;
using Env = std::map<std::string, Value, std::less<>>;

struct Context {
  int columns = 0;  // accumulated translation
  int rows = 0;
  int grow = 0;
  int turn = 0;
  const Env* env = nullptr;
};

const Value& lookup(const Context& ctx, const std::string& name) {
  if (ctx.env) {
    auto it = ctx.env->find(name);
    if (it != ctx.env->end()) return it->second;
  }
  throw EvalError(EvalError::Kind::invalid_value, "unbound parameter '" + name + "'");
}

template <typename T>
const T& lookup_as(const Context& ctx, const std::string& name) {
  const Value& v = lookup(ctx, name);
  if (auto* typed = std::get_if<T>(&v)) return *typed;
  throw EvalError(EvalError::Kind::invalid_value, "parameter '" + name + "' has the wrong type");
}

Position resolve(const PosRef& ref, const Context& ctx) {
  if (auto* p = std::get_if<Position>(&ref))
    return {p->column + ctx.columns, p->row + ctx.rows};
  const auto& bound = lookup_as<BoundPosition>(ctx, std::get<std::string>(ref));
  return {bound.position.column + ctx.columns - bound.columns,
          bound.position.row + ctx.rows - bound.rows};
}

Color resolve(const ColorRef& ref, const Context& ctx) {
  if (auto* c = std::get_if<Color>(&ref)) return *c;
  return lookup_as<Color>(ctx, std::get<std::string>(ref));
}

int resolve(const IntRef& ref, const Context& ctx) {
  if (auto* n = std::get_if<int>(&ref)) return *n;
  return lookup_as<int>(ctx, std::get<std::string>(ref));
}

Delta resolve(const DeltaRef& ref, const Context& ctx) {
  if (auto* d = std::get_if<Delta>(&ref)) return *d;
  return lookup_as<Delta>(ctx, std::get<std::string>(ref));
}

Context shifted(const Context& ctx, Delta d, int times) {
  Context out = ctx;
  out.columns += d.columns * times;
  out.rows += d.rows * times;
  return out;
}

Cube rotate_cw(Cube c, int sixths) {
  sixths = ((sixths % 6) + 6) % 6;
  for (int i = 0; i < sixths; ++i) c = {-c.z, -c.x, -c.y};
  return c;
}

std::optional<Position> rotate_tile(Position p, Position center, int sixths) {
  const Cube o = to_cube(center);
  const Cube v = to_cube(p);
  const Cube r = rotate_cw({v.x - o.x, v.y - o.y, v.z - o.z}, sixths);
  const Position out = from_cube({r.x + o.x, r.y + o.y, r.z + o.z});
  if (!in_bounds(out)) return std::nullopt;
  return out;
}

std::optional<Position> mirror_tile(Position p, const Axis& axis) {
  switch (axis.kind) {
    case AxisExpr::Kind::vertical_midline: {
      Position out{kColumns + 1 - p.column, p.row};
      if (!in_bounds(out)) return std::nullopt;
      return out;
    }
    case AxisExpr::Kind::horizontal_midline: {
      const bool odd = (p.column % 2 + 2) % 2 == 1;
      Position out{p.column, (odd ? kRows : kRows + 1) - p.row};
      if (!in_bounds(out)) return std::nullopt;
      return out;
    }
    case AxisExpr::Kind::line: break;
  }
  const int degrees = ((axis.degrees % 180) + 180) % 180;
  if (degrees != 0 && degrees != 30 && degrees != 90 && degrees != 150)
    throw EvalError(EvalError::Kind::invalid_axis,
                    "axis at " + std::to_string(axis.degrees) +
                        " degrees does not map tiles onto tiles");
  const double theta = degrees * M_PI / 180.0;
  const double ux = std::cos(theta), uy = -std::sin(theta);  // screen y points down
  const Point origin = tile_center(axis.through);
  const Point c = tile_center(p);
  const double vx = c.x - origin.x, vy = c.y - origin.y;
  const double dot = vx * ux + vy * uy;
  const double tx = origin.x + 2 * dot * ux - vx;
  const double ty = origin.y + 2 * dot * uy - vy;
  const int column = static_cast<int>(std::lround(tx / 1.5)) + 1;
  const double shift = (column % 2 + 2) % 2 == 1 ? kSqrt3 / 2 : 0.0;
  const int row = static_cast<int>(std::lround((ty - shift) / kSqrt3)) + 1;
  const Point snapped = tile_center({column, row});
  if (std::abs(snapped.x - tx) > 1e-6 || std::abs(snapped.y - ty) > 1e-6)
    throw EvalError(EvalError::Kind::invalid_axis, "axis maps " + to_string(p) + " off the grid");
  Position out{column, row};
  if (!in_bounds(out)) return std::nullopt;
  return out;
}

class Evaluator {
 public:
  Evaluator(const Program* program, const Board& board, const ObjectTable* objects)
      : program_(program), board_(board), objects_(objects) {
    if (program_)
      for (const auto& fn : program_->functions) functions_.emplace(fn.name, &fn);
  }

  std::vector<Step> run() {
    std::vector<Step> steps;
    Context root;
    root.env = &empty_env_;
    for (const auto& stmt : program_->statements) {
      ActionSet actions;
      current_ = &actions;
      exec(stmt, root);
      current_ = nullptr;
      steps.push_back({std::move(actions), board_, print_statement(stmt)});
    }
    return steps;
  }

  // Raw tiles of a region: deduplicated, possibly off the board.
  std::vector<Position> raw_region(const RegionExpr& expr, const Context& ctx) const {
    std::vector<Position> out = std::visit(
        overloaded{
            [&](const TileRegion& r) { return std::vector<Position>{resolve(r.tile, ctx)}; },
            [&](const LineRegion& r) { return line_tiles(r, ctx); },
            [&](const FlowerRegion& r) {
              Position c = resolve(r.center, ctx);
              std::vector<Position> tiles{c};
              for (Direction d : kDirections) tiles.push_back(step(c, d));
              return tiles;
            },
            [&](const NeighborsRegion& r) {
              Position c = resolve(r.center, ctx);
              std::vector<Position> tiles;
              for (Direction d : kDirections) tiles.push_back(step(c, d));
              return tiles;
            },
            [&](const HexagonRegion& r) {
              const Cube o = to_cube(resolve(r.center, ctx));
              const int radius = resolve(r.radius, ctx) + ctx.grow;
              std::vector<Position> tiles;
              for (int dx = -radius; dx <= radius; ++dx)
                for (int dy = std::max(-radius, -dx - radius);
                     dy <= std::min(radius, -dx + radius); ++dy)
                  tiles.push_back(from_cube({o.x + dx, o.y + dy, o.z - dx - dy}));
              return tiles;
            },
            [&](const ColumnRegion& r) {
              const int column = resolve(r.column, ctx) + ctx.columns;
              int from = 1, to = kRows;
              if (r.from) {
                from = resolve(*r.from, ctx) + ctx.rows;
                to = resolve(*r.to, ctx) + ctx.rows;
              }
              if (from > to) std::swap(from, to);
              std::vector<Position> tiles;
              for (int row = from; row <= to; ++row) tiles.push_back({column, row});
              return tiles;
            },
            [&](const RowRegion& r) {
              const int row = resolve(r.row, ctx) + ctx.rows;
              int from = 1, to = kColumns;
              if (r.from) {
                from = resolve(*r.from, ctx) + ctx.columns;
                to = resolve(*r.to, ctx) + ctx.columns;
              }
              if (from > to) std::swap(from, to);
              std::vector<Position> tiles;
              for (int column = from; column <= to; ++column) tiles.push_back({column, row});
              return tiles;
            },
            [&](const ListRegion& r) {
              std::vector<Position> tiles;
              for (const auto& t : r.tiles) tiles.push_back(resolve(t, ctx));
              return tiles;
            },
            [&](const ObjectRegion& r) {
              const RegionExpr* def = find_object(r.name);
              if (!def)
                throw EvalError(EvalError::Kind::unknown_object, "unknown object '" + r.name + "'");
              return raw_region(*def, ctx);
            },
        },
        expr);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Region region(const RegionExpr& expr, const Context& ctx) const {
    Region out;
    for (Position p : raw_region(expr, ctx))
      if (in_bounds(p)) out.insert(p);
    return out;
  }

 private:
  const RegionExpr* find_object(const std::string& name) const {
    if (objects_) {
      auto it = objects_->find(name);
      if (it != objects_->end()) return &it->second;
    }
    if (program_)
      for (const auto& obj : program_->objects)
        if (obj.name == name) return &obj.region;
    return nullptr;
  }

  std::vector<Position> line_tiles(const LineRegion& r, const Context& ctx) const {
    const Position start = resolve(r.start, ctx);
    const Direction dir = turn(r.direction, ctx.turn);
    std::vector<Position> tiles;
    switch (r.length.kind) {
      case LineLength::Kind::count: {
        const int n = resolve(r.length.count, ctx) + ctx.grow;
        Position p = start;
        for (int i = 0; i < n; ++i, p = step(p, dir)) tiles.push_back(p);
        break;
      }
      case LineLength::Kind::to_edge: {
        if (!in_bounds(start)) return {start};
        for (Position p = start; in_bounds(p); p = step(p, dir)) tiles.push_back(p);
        break;
      }
      case LineLength::Kind::until_color: {
        if (!in_bounds(start)) return {start};
        const Color stop = resolve(r.length.until, ctx);
        for (Position p = start; in_bounds(p) && board_.at(p) != stop; p = step(p, dir))
          tiles.push_back(p);
        break;
      }
    }
    return tiles;
  }

  Region required_region(const RegionExpr& expr, const Context& ctx) const {
    auto raw = raw_region(expr, ctx);
    Region out;
    for (Position p : raw)
      if (in_bounds(p)) out.insert(p);
    if (out.empty()) {
      if (raw.empty()) throw EvalError(EvalError::Kind::empty_region, "region has no tiles");
      throw EvalError(EvalError::Kind::empty_region, "region lies entirely off the board", true);
    }
    return out;
  }

  void assign(Position p, Color c) {
    board_.set(p, c);
    current_->assign(p, c);
  }

  // Writes the old colors of each source tile onto its image, all at once.
  void transport(const std::vector<std::pair<Position, Position>>& moves) {
    std::vector<Action> writes;
    for (const auto& [from, to] : moves) writes.push_back({to, board_.at(from)});
    for (const auto& w : writes) assign(w.position, w.color);
  }

  // Off-board test tiles make a test false; `off_board` reports whether any
  // tile the condition looked at was off the board.
  bool test(const Condition& c, const Context& ctx, bool& off_board) const {
    switch (c.op) {
      case Condition::Op::negate: return !test(c.operands.front(), ctx, off_board);
      case Condition::Op::all:
        for (const auto& o : c.operands)
          if (!test(o, ctx, off_board)) return false;
        return true;
      case Condition::Op::any:
        for (const auto& o : c.operands)
          if (test(o, ctx, off_board)) return true;
        return false;
      case Condition::Op::test: break;
    }
    const Position p = resolve(c.test.tile, ctx);
    if (!in_bounds(p)) {
      off_board = true;
      return false;
    }
    switch (c.test.kind) {
      case TileTest::Kind::color: return board_.at(p) == resolve(c.test.color, ctx);
      case TileTest::Kind::painted: return board_.at(p) != Color::white;
      case TileTest::Kind::edge: return neighbors(p).size() < 6;
      case TileTest::Kind::odd_column: return p.column % 2 == 1;
      case TileTest::Kind::even_column: return p.column % 2 == 0;
      case TileTest::Kind::odd_row: return p.row % 2 == 1;
      case TileTest::Kind::even_row: return p.row % 2 == 0;
    }
    return false;
  }

  void exec_block(const Block& block, const Context& ctx) {
    for (const auto& s : block) exec(s, ctx);
  }

  void exec(const Statement& stmt, const Context& ctx) {
    std::visit(
        overloaded{
            [&](const PaintStmt& s) {
              const Color color = resolve(s.color, ctx);
              for (Position p : required_region(s.region, ctx)) assign(p, color);
            },
            [&](const RepeatStmt& s) {
              const int count = resolve(s.count, ctx);
              if (count < 1 || count > kMaxLoopIterations)
                throw EvalError(EvalError::Kind::invalid_value,
                                "repeat count " + std::to_string(count) + " out of range");
              const Delta offset = resolve(s.offset, ctx);
              for (int i = 0; i < count; ++i) {
                Context inner = shifted(ctx, offset, i);
                Env env;
                if (s.cycle) {
                  env = *ctx.env;
                  const auto& colors = s.cycle->colors;
                  env[s.cycle->variable] =
                      resolve(colors[static_cast<std::size_t>(i) % colors.size()], ctx);
                  inner.env = &env;
                }
                exec_block(s.body, inner);
              }
            },
            [&](const WhileStmt& s) {
              const Delta offset = resolve(s.offset, ctx);
              if (offset == Delta{})
                throw EvalError(EvalError::Kind::invalid_value, "while needs a non-zero offset");
              for (int i = 0;; ++i) {
                if (i >= kMaxLoopIterations)
                  throw EvalError(EvalError::Kind::depth, "while loop did not terminate");
                const Context inner = shifted(ctx, offset, i);
                bool off_board = false;
                if (!test(s.condition, inner, off_board) || off_board) break;
                try {
                  exec_block(s.body, inner);
                } catch (const EvalError& e) {
                  if (e.kind() == EvalError::Kind::empty_region && e.off_board()) break;
                  throw;
                }
              }
            },
            [&](const IfStmt& s) {
              bool off_board = false;
              if (test(s.condition, ctx, off_board))
                exec_block(s.then_body, ctx);
              else if (s.else_body)
                exec_block(*s.else_body, ctx);
            },
            [&](const CallStmt& s) {
              auto it = functions_.find(s.name);
              if (it == functions_.end())
                throw EvalError(EvalError::Kind::invalid_value, "unknown function '" + s.name + "'");
              if (call_depth_ >= kMaxCallDepth)
                throw EvalError(EvalError::Kind::depth, "call depth limit exceeded");
              const FunctionDef& fn = *it->second;
              Env env;
              for (std::size_t i = 0; i < fn.params.size(); ++i) {
                env[fn.params[i].name] = std::visit(
                    overloaded{
                        [&](const ColorRef& a) -> Value { return resolve(a, ctx); },
                        [&](const PosRef& a) -> Value {
                          return BoundPosition{resolve(a, ctx), ctx.columns, ctx.rows};
                        },
                        [&](const DeltaRef& a) -> Value { return resolve(a, ctx); },
                        [&](const IntRef& a) -> Value { return resolve(a, ctx); },
                    },
                    s.arguments.at(i));
              }
              Context inner = ctx;
              inner.env = &env;
              ++call_depth_;
              try {
                exec_block(fn.body, inner);
              } catch (...) {
                --call_depth_;
                throw;
              }
              --call_depth_;
            },
            [&](const ReflectStmt& s) {
              Axis axis;
              axis.kind = s.axis.kind;
              if (axis.kind == AxisExpr::Kind::line) {
                axis.through = resolve(s.axis.through, ctx);
                axis.degrees = resolve(s.axis.degrees, ctx);
              }
              std::vector<std::pair<Position, Position>> moves;
              for (Position p : required_region(s.region, ctx))
                if (auto image = mirror_tile(p, axis)) moves.emplace_back(p, *image);
              transport(moves);
            },
            [&](const RotateStmt& s) {
              const int sixths = resolve(s.sixths, ctx);
              if (sixths < 1 || sixths > 5)
                throw EvalError(EvalError::Kind::invalid_value,
                                "rotation must be 1 to 5 sixths, got " + std::to_string(sixths));
              const Position center = resolve(s.center, ctx);
              std::vector<std::pair<Position, Position>> moves;
              for (Position p : required_region(s.region, ctx))
                if (auto image = rotate_tile(p, center, sixths)) moves.emplace_back(p, *image);
              transport(moves);
            },
            [&](const RecurseStmt& s) {
              const int depth = resolve(s.depth, ctx);
              if (depth < 1)
                throw EvalError(EvalError::Kind::invalid_value, "recursion depth must be positive");
              recurse(s, ctx, 0, depth);
            },
        },
        stmt.node);
  }

  void recurse(const RecurseStmt& s, const Context& ctx, int level, int depth) {
    if (level == depth) return;
    if (recursion_depth_ >= kMaxRecursionDepth)
      throw EvalError(EvalError::Kind::depth,
                      "recursion bound exceeded (limit " + std::to_string(kMaxRecursionDepth) + ")");
    ++recursion_depth_;
    struct Guard {
      int& depth;
      ~Guard() { --depth; }
    } guard{recursion_depth_};
    try {
      exec_block(s.body, ctx);
    } catch (const EvalError& e) {
      if (e.kind() == EvalError::Kind::empty_region && e.off_board()) return;
      throw;
    }
    Context next = shifted(ctx, resolve(s.offset, ctx), 1);
    next.grow += s.grow;
    next.turn += s.turn;
    recurse(s, next, level + 1, depth);
  }

  const Program* program_;
  Board board_;
  const ObjectTable* objects_;
  std::map<std::string, const FunctionDef*, std::less<>> functions_;
  ActionSet* current_ = nullptr;
  Env empty_env_;
  int recursion_depth_ = 0;
  int call_depth_ = 0;
};

}  // namespace

Region reflect_region(const Region& region, const Axis& axis) {
  Region out;
  for (Position p : region)
    if (auto image = mirror_tile(p, axis)) out.insert(*image);
  return out;
}

Region rotate_region(const Region& region, Position center, int sixths) {
  Region out;
  for (Position p : region)
    if (auto image = rotate_tile(p, center, sixths)) out.insert(*image);
  return out;
}

Region expand_region(const RegionExpr& expr, const Board& board, const ObjectTable& objects) {
  Evaluator evaluator(nullptr, board, &objects);
  Env env;
  Context ctx;
  ctx.env = &env;
  return evaluator.region(expr, ctx);
}

std::vector<Step> eval_program(const Program& program, const Board& initial) {
  return Evaluator(&program, initial, nullptr).run();
}

}  // namespace hexagons::dsl
