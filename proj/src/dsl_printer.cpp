#include "hexagons/dsl.hpp"

namespace hexagons::dsl {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string str(const PosRef& p) {
  if (auto* pos = std::get_if<Position>(&p)) return to_string(*pos);
  return std::get<std::string>(p);
}

std::string str(const ColorRef& c) {
  if (auto* color = std::get_if<Color>(&c)) return std::string(color_name(*color));
  return std::get<std::string>(c);
}

std::string str(const IntRef& n) {
  if (auto* v = std::get_if<int>(&n)) return std::to_string(*v);
  return std::get<std::string>(n);
}

std::string signed_str(int n) { return (n < 0 ? "-" : "+") + std::to_string(n < 0 ? -n : n); }

std::string str(const DeltaRef& d) {
  if (auto* delta = std::get_if<Delta>(&d))
    return "(" + signed_str(delta->columns) + " columns, " + signed_str(delta->rows) + " rows)";
  return std::get<std::string>(d);
}

// flower(2,2) for literals, flower(p) for parameters.
std::string center_str(const PosRef& p) {
  if (auto* pos = std::get_if<Position>(&p))
    return "(" + std::to_string(pos->column) + "," + std::to_string(pos->row) + ")";
  return "(" + std::get<std::string>(p) + ")";
}

std::string str(const RegionExpr& region) {
  return std::visit(
      overloaded{
          [](const TileRegion& r) { return str(r.tile); },
          [](const LineRegion& r) {
            std::string len;
            switch (r.length.kind) {
              case LineLength::Kind::count: len = str(r.length.count); break;
              case LineLength::Kind::to_edge: len = "to-edge"; break;
              case LineLength::Kind::until_color:
                len = "until-color(" + str(r.length.until) + ")";
                break;
            }
            return "line(" + str(r.start) + ", " + std::string(direction_name(r.direction)) +
                   ", " + len + ")";
          },
          [](const FlowerRegion& r) { return "flower" + center_str(r.center); },
          [](const NeighborsRegion& r) { return "neighbors" + center_str(r.center); },
          [](const HexagonRegion& r) {
            return "hexagon(" + str(r.center) + ", " + str(r.radius) + ")";
          },
          [](const ColumnRegion& r) {
            std::string out = "column(" + str(r.column);
            if (r.from) out += ", " + str(*r.from) + ", " + str(*r.to);
            return out + ")";
          },
          [](const RowRegion& r) {
            std::string out = "row(" + str(r.row);
            if (r.from) out += ", " + str(*r.from) + ", " + str(*r.to);
            return out + ")";
          },
          [](const ListRegion& r) {
            std::string out = "tiles[";
            for (std::size_t i = 0; i < r.tiles.size(); ++i)
              out += (i ? ", " : "") + str(r.tiles[i]);
            return out + "]";
          },
          [](const ObjectRegion& r) { return r.name; },
      },
      region);
}

std::string str(const Condition& c) {
  switch (c.op) {
    case Condition::Op::test: {
      const std::string tile = str(c.test.tile);
      switch (c.test.kind) {
        case TileTest::Kind::color: return tile + " is " + str(c.test.color);
        case TileTest::Kind::painted: return tile + " is painted";
        case TileTest::Kind::edge: return tile + " is edge";
        case TileTest::Kind::odd_column: return tile + " in odd column";
        case TileTest::Kind::even_column: return tile + " in even column";
        case TileTest::Kind::odd_row: return tile + " in odd row";
        case TileTest::Kind::even_row: return tile + " in even row";
      }
      return tile;
    }
    case Condition::Op::negate: return "not " + str(c.operands.front());
    case Condition::Op::all:
    case Condition::Op::any: {
      const char* joiner = c.op == Condition::Op::all ? " and " : " or ";
      std::string out;
      for (std::size_t i = 0; i < c.operands.size(); ++i)
        out += (i ? joiner : "") + str(c.operands[i]);
      return out;
    }
  }
  return {};
}

std::string str(const AxisExpr& axis) {
  switch (axis.kind) {
    case AxisExpr::Kind::vertical_midline: return "vertical";
    case AxisExpr::Kind::horizontal_midline: return "horizontal";
    case AxisExpr::Kind::line:
      if (auto* deg = std::get_if<int>(&axis.degrees)) {
        if (*deg == 90) return "vertical through " + str(axis.through);
        if (*deg == 0) return "horizontal through " + str(axis.through);
        if (*deg == 30) return "diagonal rising through " + str(axis.through);
        if (*deg == 150) return "diagonal falling through " + str(axis.through);
      }
      return "through " + str(axis.through) + " angle " + str(axis.degrees);
  }
  return {};
}

bool is_zero(const DeltaRef& d) {
  auto* delta = std::get_if<Delta>(&d);
  return delta && *delta == Delta{};
}

class Printer {
 public:
  explicit Printer(bool one_line) : one_line_(one_line) {}

  std::string statement(const Statement& s, int indent) {
    return std::visit(
        overloaded{
            [&](const PaintStmt& p) { return "paint " + str(p.region) + " " + str(p.color); },
            [&](const RepeatStmt& r) {
              std::string out = "repeat " + str(r.count);
              if (!is_zero(r.offset)) out += " offset " + str(r.offset);
              if (r.cycle) {
                out += " cycle " + r.cycle->variable + " in [";
                for (std::size_t i = 0; i < r.cycle->colors.size(); ++i)
                  out += (i ? ", " : "") + str(r.cycle->colors[i]);
                out += "]";
              }
              return out + " " + block(r.body, indent);
            },
            [&](const WhileStmt& w) {
              return "while " + str(w.condition) + " offset " + str(w.offset) + " " +
                     block(w.body, indent);
            },
            [&](const IfStmt& i) {
              std::string out = "if " + str(i.condition) + " " + block(i.then_body, indent);
              if (i.else_body) out += " else " + block(*i.else_body, indent);
              return out;
            },
            [&](const CallStmt& c) {
              std::string out = c.name + "(";
              for (std::size_t i = 0; i < c.arguments.size(); ++i) {
                if (i) out += ", ";
                out += std::visit([](const auto& a) { return str(a); }, c.arguments[i]);
              }
              return out + ")";
            },
            [&](const ReflectStmt& r) {
              return "reflect " + str(r.region) + " axis " + str(r.axis);
            },
            [&](const RotateStmt& r) {
              return "rotate " + str(r.region) + " about " + str(r.center) + " by " +
                     str(r.sixths);
            },
            [&](const RecurseStmt& r) {
              std::string out = "recurse " + str(r.depth);
              if (!is_zero(r.offset)) out += " offset " + str(r.offset);
              if (r.grow) out += " grow " + signed_str(r.grow);
              if (r.turn) out += " turn " + signed_str(r.turn);
              return out + " " + block(r.body, indent);
            },
        },
        s.node);
  }

  std::string block(const Block& body, int indent) {
    if (body.empty()) return "{}";
    if (one_line_) {
      std::string out = "{ ";
      for (std::size_t i = 0; i < body.size(); ++i)
        out += (i ? "; " : "") + statement(body[i], indent);
      return out + " }";
    }
    std::string out = "{\n";
    for (const auto& s : body)
      out += pad(indent + 1) + statement(s, indent + 1) + "\n";
    return out + pad(indent) + "}";
  }

 private:
  static std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }
  bool one_line_;
};

std::string param_type_name(ParamType t) {
  switch (t) {
    case ParamType::color: return "color";
    case ParamType::pos: return "pos";
    case ParamType::delta: return "delta";
    case ParamType::integer: return "int";
  }
  return {};
}

}  // namespace

std::string print_statement(const Statement& statement) {
  return Printer(true).statement(statement, 0);
}

std::string print_program(const Program& program) {
  Printer printer(false);
  std::string out;
  for (const auto& obj : program.objects)
    out += "object " + obj.name + " = " + str(obj.region) + "\n";
  for (const auto& fn : program.functions) {
    out += "define " + fn.name + "(";
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      out += (i ? ", " : "") + fn.params[i].name + ": " + param_type_name(fn.params[i].type);
    out += ") " + printer.block(fn.body, 0) + "\n";
  }
  for (const auto& s : program.statements) out += printer.statement(s, 0) + "\n";
  return out;
}

}  // namespace hexagons::dsl
