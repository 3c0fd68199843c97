#include <algorithm>
#include <cctype>
#include <set>

#include "hexagons/dsl.hpp"

namespace hexagons::dsl {
namespace {

std::string format_parse_error(int line, int column, const std::string& message,
                               const std::vector<std::string>& expected) {
  std::string out = "line " + std::to_string(line) + ", column " + std::to_string(column) +
                    ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

struct Token {
  enum class Kind { ident, integer, punct, newline, end };
  Kind kind = Kind::end;
  std::string text;
  int value = 0;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::newline: return "end of line";
    case Token::Kind::end: return "end of input";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  auto is_ident_start = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  };
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      tokens.push_back({Token::Kind::newline, "\n", 0, line, column});
      advance(1);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      while (j > i + 1 && text[j - 1] == '-') --j;  // no trailing hyphen
      tok.kind = Token::Kind::ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = Token::Kind::integer;
      tok.text = std::string(text.substr(i, j - i));
      if (tok.text.size() > 6)
        throw ParseError(ParseError::Kind::invalid_value, line, column,
                         "integer literal too large: " + tok.text);
      tok.value = std::stoi(tok.text);
      advance(j - i);
    } else if (std::string_view("(){}[],;:=+-").find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::punct;
      tok.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(ParseError::Kind::syntax, line, column,
                       std::string("unexpected character '") + c + "'");
    }
    tokens.push_back(std::move(tok));
  }
  tokens.push_back({Token::Kind::end, "", 0, line, column});
  return tokens;
}

const std::set<std::string, std::less<>> kReserved = {
    "paint",    "repeat",  "offset",   "cycle",   "in",       "while",   "if",
    "else",     "define",  "object",   "reflect", "axis",     "vertical", "horizontal",
    "diagonal", "rising",  "falling",  "through", "angle",    "rotate",  "about",
    "by",       "recurse", "grow",     "turn",    "line",     "flower",  "circle",
    "neighbors", "hexagon", "column",  "columns", "row",      "rows",    "tiles",
    "to-edge",  "until-color", "is",   "not",     "and",      "or",      "odd",
    "even",     "painted", "edge",     "color",   "pos",      "delta",   "int"};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Program parse() {
    Program program;
    skip_separators();
    while (!at_end()) {
      if (is_word("define")) {
        program.functions.push_back(parse_define());
      } else if (is_word("object")) {
        program.objects.push_back(parse_object());
      } else {
        program.statements.push_back(parse_statement());
      }
      if (!at_end()) {
        if (!is_separator()) fail_expected({"end of line", "';'"});
        skip_separators();
      }
    }
    return program;
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  bool is_separator() const {
    return peek().kind == Token::Kind::newline || is_punct(";");
  }
  void skip_separators() {
    while (is_separator()) next();
  }
  bool is_punct(std::string_view p) const {
    return peek().kind == Token::Kind::punct && peek().text == p;
  }
  bool is_word(std::string_view w) const {
    return peek().kind == Token::Kind::ident && peek().text == w;
  }
  bool accept_punct(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!is_word(w)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(ParseError::Kind kind, const Token& at, std::string message,
                         std::vector<std::string> expected = {}) const {
    throw ParseError(kind, at.line, at.column, std::move(message), std::move(expected));
  }
  [[noreturn]] void fail_expected(std::vector<std::string> expected) const {
    fail(ParseError::Kind::syntax, peek(), "unexpected " + describe(peek()),
         std::move(expected));
  }

  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail_expected({"'" + std::string(p) + "'"});
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail_expected({"'" + std::string(w) + "'"});
  }
  const Token& expect_ident(std::string_view what) {
    if (peek().kind != Token::Kind::ident) fail_expected({std::string(what)});
    return next();
  }
  int expect_integer() {
    if (peek().kind != Token::Kind::integer) fail_expected({"integer"});
    return next().value;
  }
  int expect_signed_integer() {
    int sign = 1;
    if (accept_punct("-"))
      sign = -1;
    else
      accept_punct("+");
    return sign * expect_integer();
  }

  // --- scopes --------------------------------------------------------------

  std::optional<ParamType> lookup(std::string_view name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    return std::nullopt;
  }

  void check_new_name(const Token& tok) const {
    if (kReserved.count(tok.text))
      fail(ParseError::Kind::syntax, tok, "'" + tok.text + "' is a reserved word");
    if (color_from_name(tok.text))
      fail(ParseError::Kind::syntax, tok, "'" + tok.text + "' is a color name");
  }

  // --- definitions ---------------------------------------------------------

  FunctionDef parse_define() {
    expect_word("define");
    const Token& name = expect_ident("function name");
    check_new_name(name);
    if (functions_.count(name.text) || objects_.count(name.text))
      fail(ParseError::Kind::syntax, name, "'" + name.text + "' is already defined");
    FunctionDef def;
    def.name = name.text;
    expect_punct("(");
    std::map<std::string, ParamType, std::less<>> scope;
    if (!is_punct(")")) {
      do {
        const Token& pname = expect_ident("parameter name");
        check_new_name(pname);
        if (scope.count(pname.text))
          fail(ParseError::Kind::syntax, pname, "duplicate parameter '" + pname.text + "'");
        expect_punct(":");
        ParamType type;
        if (accept_word("color"))
          type = ParamType::color;
        else if (accept_word("pos"))
          type = ParamType::pos;
        else if (accept_word("delta"))
          type = ParamType::delta;
        else if (accept_word("int"))
          type = ParamType::integer;
        else
          fail_expected({"'color'", "'pos'", "'delta'", "'int'"});
        scope.emplace(pname.text, type);
        def.params.push_back({pname.text, type});
      } while (accept_punct(","));
    }
    expect_punct(")");
    scopes_.push_back(std::move(scope));
    def.body = parse_block();
    scopes_.pop_back();
    functions_.emplace(def.name, def.params);
    return def;
  }

  ObjectDef parse_object() {
    expect_word("object");
    const Token& name = expect_ident("object name");
    check_new_name(name);
    if (functions_.count(name.text) || objects_.count(name.text))
      fail(ParseError::Kind::syntax, name, "'" + name.text + "' is already defined");
    expect_punct("=");
    ObjectDef def{name.text, parse_region()};
    objects_.insert(def.name);
    return def;
  }

  // --- statements ----------------------------------------------------------

  Block parse_block() {
    expect_punct("{");
    Block block;
    skip_separators();
    while (!is_punct("}")) {
      block.push_back(parse_statement());
      if (!is_punct("}")) {
        if (!is_separator()) fail_expected({"end of line", "';'", "'}'"});
        skip_separators();
      }
    }
    expect_punct("}");
    return block;
  }

  Statement parse_statement() {
    Statement stmt;
    stmt.line = peek().line;
    if (is_word("paint")) {
      stmt.node = parse_paint();
    } else if (is_word("repeat")) {
      stmt.node = parse_repeat();
    } else if (is_word("while")) {
      stmt.node = parse_while();
    } else if (is_word("if")) {
      stmt.node = parse_if();
    } else if (is_word("reflect")) {
      stmt.node = parse_reflect();
    } else if (is_word("rotate")) {
      stmt.node = parse_rotate();
    } else if (is_word("recurse")) {
      stmt.node = parse_recurse();
    } else if (peek().kind == Token::Kind::ident && !kReserved.count(peek().text) &&
               peek(1).kind == Token::Kind::punct && peek(1).text == "(") {
      stmt.node = parse_call();
    } else {
      fail_expected({"'paint'", "'repeat'", "'while'", "'if'", "'reflect'", "'rotate'",
                     "'recurse'", "function call"});
    }
    return stmt;
  }

  PaintStmt parse_paint() {
    expect_word("paint");
    PaintStmt s;
    s.region = parse_region();
    s.color = parse_color();
    return s;
  }

  RepeatStmt parse_repeat() {
    expect_word("repeat");
    RepeatStmt s;
    const Token& at = peek();
    s.count = parse_int();
    if (auto* n = std::get_if<int>(&s.count); n && *n < 1)
      fail(ParseError::Kind::invalid_value, at, "repeat count must be at least 1");
    if (accept_word("offset")) s.offset = parse_delta();
    std::map<std::string, ParamType, std::less<>> scope;
    if (accept_word("cycle")) {
      const Token& var = expect_ident("cycle variable");
      check_new_name(var);
      expect_word("in");
      expect_punct("[");
      ColorCycle cycle;
      cycle.variable = var.text;
      do {
        cycle.colors.push_back(parse_color());
      } while (accept_punct(","));
      expect_punct("]");
      s.cycle = std::move(cycle);
      scope.emplace(var.text, ParamType::color);
    }
    scopes_.push_back(std::move(scope));
    s.body = parse_block();
    scopes_.pop_back();
    return s;
  }

  WhileStmt parse_while() {
    expect_word("while");
    WhileStmt s;
    s.condition = parse_condition();
    const Token& at = peek();
    expect_word("offset");
    s.offset = parse_delta();
    if (auto* d = std::get_if<Delta>(&s.offset); d && *d == Delta{})
      fail(ParseError::Kind::invalid_value, at, "while needs a non-zero offset");
    s.body = parse_block();
    return s;
  }

  IfStmt parse_if() {
    expect_word("if");
    IfStmt s;
    s.condition = parse_condition();
    s.then_body = parse_block();
    // An `else` may follow on the next line.
    std::size_t save = pos_;
    while (peek().kind == Token::Kind::newline) next();
    if (accept_word("else")) {
      if (is_word("if")) {
        Statement nested;
        nested.line = peek().line;
        nested.node = parse_if();
        s.else_body = Block{std::move(nested)};
      } else {
        s.else_body = parse_block();
      }
    } else {
      pos_ = save;
    }
    return s;
  }

  CallStmt parse_call() {
    const Token& name = next();
    auto fn = functions_.find(name.text);
    if (fn == functions_.end())
      fail(ParseError::Kind::unknown_definition, name,
           "unknown function '" + name.text + "'");
    CallStmt s;
    s.name = name.text;
    expect_punct("(");
    const auto& params = fn->second;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) expect_punct(",");
      switch (params[i].type) {
        case ParamType::color: s.arguments.emplace_back(parse_color()); break;
        case ParamType::pos: s.arguments.emplace_back(parse_pos()); break;
        case ParamType::delta: s.arguments.emplace_back(parse_delta()); break;
        case ParamType::integer: s.arguments.emplace_back(parse_int()); break;
      }
    }
    if (!is_punct(")")) {
      if (params.size() == s.arguments.size() && is_punct(","))
        fail(ParseError::Kind::invalid_value, peek(),
             "'" + s.name + "' takes " + std::to_string(params.size()) + " argument(s)");
      fail_expected({"')'"});
    }
    next();
    return s;
  }

  ReflectStmt parse_reflect() {
    expect_word("reflect");
    ReflectStmt s;
    s.region = parse_region();
    expect_word("axis");
    s.axis = parse_axis();
    return s;
  }

  AxisExpr parse_axis() {
    AxisExpr axis;
    if (accept_word("vertical")) {
      axis.kind = AxisExpr::Kind::vertical_midline;
      if (accept_word("through")) {
        axis.kind = AxisExpr::Kind::line;
        axis.through = parse_pos();
        axis.degrees = 90;
      }
    } else if (accept_word("horizontal")) {
      axis.kind = AxisExpr::Kind::horizontal_midline;
      if (accept_word("through")) {
        axis.kind = AxisExpr::Kind::line;
        axis.through = parse_pos();
        axis.degrees = 0;
      }
    } else if (accept_word("diagonal")) {
      axis.kind = AxisExpr::Kind::line;
      if (accept_word("rising"))
        axis.degrees = 30;
      else if (accept_word("falling"))
        axis.degrees = 150;
      else
        fail_expected({"'rising'", "'falling'"});
      expect_word("through");
      axis.through = parse_pos();
    } else if (accept_word("through")) {
      axis.kind = AxisExpr::Kind::line;
      axis.through = parse_pos();
      expect_word("angle");
      axis.degrees = parse_int();
    } else {
      fail_expected({"'vertical'", "'horizontal'", "'diagonal'", "'through'"});
    }
    return axis;
  }

  RotateStmt parse_rotate() {
    expect_word("rotate");
    RotateStmt s;
    s.region = parse_region();
    expect_word("about");
    s.center = parse_pos();
    expect_word("by");
    const Token& at = peek();
    s.sixths = parse_int();
    if (auto* k = std::get_if<int>(&s.sixths); k && (*k < 1 || *k > 5))
      fail(ParseError::Kind::invalid_value, at, "rotation must be 1 to 5 sixths");
    return s;
  }

  RecurseStmt parse_recurse() {
    expect_word("recurse");
    RecurseStmt s;
    const Token& at = peek();
    s.depth = parse_int();
    if (auto* d = std::get_if<int>(&s.depth); d && *d < 1)
      fail(ParseError::Kind::invalid_value, at, "recursion depth must be at least 1");
    if (accept_word("offset")) s.offset = parse_delta();
    if (accept_word("grow")) s.grow = expect_signed_integer();
    if (accept_word("turn")) s.turn = expect_signed_integer();
    s.body = parse_block();
    return s;
  }

  // --- conditions ----------------------------------------------------------

  Condition parse_condition() {
    Condition first = parse_conjunction();
    if (!is_word("or")) return first;
    Condition any;
    any.op = Condition::Op::any;
    any.operands.push_back(std::move(first));
    while (accept_word("or")) any.operands.push_back(parse_conjunction());
    return any;
  }

  Condition parse_conjunction() {
    Condition first = parse_negation();
    if (!is_word("and")) return first;
    Condition all;
    all.op = Condition::Op::all;
    all.operands.push_back(std::move(first));
    while (accept_word("and")) all.operands.push_back(parse_negation());
    return all;
  }

  Condition parse_negation() {
    if (accept_word("not")) {
      Condition neg;
      neg.op = Condition::Op::negate;
      neg.operands.push_back(parse_negation());
      return neg;
    }
    Condition c;
    c.op = Condition::Op::test;
    c.test.tile = parse_pos();
    if (accept_word("is")) {
      if (accept_word("painted"))
        c.test.kind = TileTest::Kind::painted;
      else if (accept_word("edge"))
        c.test.kind = TileTest::Kind::edge;
      else {
        c.test.kind = TileTest::Kind::color;
        c.test.color = parse_color();
      }
    } else if (accept_word("in")) {
      bool odd;
      if (accept_word("odd"))
        odd = true;
      else if (accept_word("even"))
        odd = false;
      else
        fail_expected({"'odd'", "'even'"});
      if (accept_word("column"))
        c.test.kind = odd ? TileTest::Kind::odd_column : TileTest::Kind::even_column;
      else if (accept_word("row"))
        c.test.kind = odd ? TileTest::Kind::odd_row : TileTest::Kind::even_row;
      else
        fail_expected({"'column'", "'row'"});
    } else {
      fail_expected({"'is'", "'in'"});
    }
    return c;
  }

  // --- regions -------------------------------------------------------------

  RegionExpr parse_region() {
    if (is_punct("(")) return TileRegion{parse_pos()};
    if (accept_word("line")) {
      LineRegion line;
      expect_punct("(");
      line.start = parse_pos();
      expect_punct(",");
      const Token& dir = expect_ident("direction");
      auto d = direction_from_name(dir.text);
      if (!d)
        fail(ParseError::Kind::syntax, dir, "unknown direction '" + dir.text + "'",
             {"'up'", "'down'", "'up-right'", "'down-right'", "'up-left'", "'down-left'"});
      line.direction = *d;
      expect_punct(",");
      if (accept_word("to-edge")) {
        line.length.kind = LineLength::Kind::to_edge;
      } else if (accept_word("until-color")) {
        line.length.kind = LineLength::Kind::until_color;
        expect_punct("(");
        line.length.until = parse_color();
        expect_punct(")");
      } else {
        line.length.kind = LineLength::Kind::count;
        const Token& at = peek();
        line.length.count = parse_int();
        if (auto* n = std::get_if<int>(&line.length.count); n && *n < 1)
          fail(ParseError::Kind::invalid_value, at, "line length must be at least 1");
      }
      expect_punct(")");
      return line;
    }
    if (accept_word("flower") || accept_word("circle")) return FlowerRegion{parse_center()};
    if (accept_word("neighbors")) return NeighborsRegion{parse_center()};
    if (accept_word("hexagon")) {
      HexagonRegion hex;
      expect_punct("(");
      hex.center = parse_pos();
      expect_punct(",");
      hex.radius = parse_int();
      expect_punct(")");
      return hex;
    }
    if (is_word("column") || is_word("row")) {
      const bool column = next().text == "column";
      expect_punct("(");
      IntRef index = parse_int();
      std::optional<IntRef> from, to;
      if (accept_punct(",")) {
        from = parse_int();
        expect_punct(",");
        to = parse_int();
      }
      expect_punct(")");
      if (column) return ColumnRegion{index, from, to};
      return RowRegion{index, from, to};
    }
    if (accept_word("tiles")) {
      ListRegion list;
      expect_punct("[");
      do {
        list.tiles.push_back(parse_pos());
      } while (accept_punct(","));
      expect_punct("]");
      return list;
    }
    if (peek().kind == Token::Kind::ident && !kReserved.count(peek().text)) {
      const Token& name = next();
      if (auto type = lookup(name.text)) {
        if (*type != ParamType::pos)
          fail(ParseError::Kind::syntax, name, "'" + name.text + "' is not a position");
        return TileRegion{name.text};
      }
      if (objects_.count(name.text)) return ObjectRegion{name.text};
      fail(ParseError::Kind::unknown_definition, name,
           "unknown object '" + name.text + "'");
    }
    fail_expected({"position", "'line'", "'flower'", "'neighbors'", "'hexagon'", "'column'",
                   "'row'", "'tiles'", "object name"});
  }

  // Either "c, r" written inline or a position.
  PosRef parse_center() {
    expect_punct("(");
    PosRef p;
    if (peek().kind == Token::Kind::integer) {
      const Token& at = peek();
      int c = expect_integer();
      expect_punct(",");
      int r = expect_integer();
      p = checked_position(at, c, r);
    } else {
      p = parse_pos();
    }
    expect_punct(")");
    return p;
  }

  Position checked_position(const Token& at, int c, int r) const {
    Position p{c, r};
    if (!in_bounds(p))
      fail(ParseError::Kind::bounds, at, "position " + to_string(p) + " is off the board");
    return p;
  }

  PosRef parse_pos() {
    if (is_punct("(")) {
      const Token& at = next();
      int c = expect_integer();
      expect_punct(",");
      int r = expect_integer();
      expect_punct(")");
      return checked_position(at, c, r);
    }
    if (peek().kind == Token::Kind::ident && !kReserved.count(peek().text)) {
      const Token& name = next();
      auto type = lookup(name.text);
      if (!type)
        fail(ParseError::Kind::unknown_definition, name,
             "unknown position parameter '" + name.text + "'");
      if (*type != ParamType::pos)
        fail(ParseError::Kind::syntax, name, "'" + name.text + "' is not a position");
      return name.text;
    }
    fail_expected({"position"});
  }

  ColorRef parse_color() {
    if (peek().kind != Token::Kind::ident) fail_expected({"color"});
    const Token& name = next();
    if (auto c = color_from_name(name.text)) return *c;
    if (auto type = lookup(name.text); type && *type == ParamType::color) return name.text;
    std::vector<std::string> expected;
    for (const auto& e : kPalette) expected.emplace_back(e.name);
    fail(ParseError::Kind::unknown_color, name, "unknown color '" + name.text + "'",
         std::move(expected));
  }

  IntRef parse_int() {
    if (peek().kind == Token::Kind::integer) return next().value;
    if (peek().kind == Token::Kind::ident && !kReserved.count(peek().text)) {
      const Token& name = next();
      auto type = lookup(name.text);
      if (!type)
        fail(ParseError::Kind::unknown_definition, name,
             "unknown integer parameter '" + name.text + "'");
      if (*type != ParamType::integer)
        fail(ParseError::Kind::syntax, name, "'" + name.text + "' is not an integer");
      return name.text;
    }
    fail_expected({"integer"});
  }

  DeltaRef parse_delta() {
    if (peek().kind == Token::Kind::ident && !kReserved.count(peek().text)) {
      const Token& name = next();
      auto type = lookup(name.text);
      if (!type)
        fail(ParseError::Kind::unknown_definition, name,
             "unknown offset parameter '" + name.text + "'");
      if (*type != ParamType::delta)
        fail(ParseError::Kind::syntax, name, "'" + name.text + "' is not an offset");
      return name.text;
    }
    expect_punct("(");
    Delta d;
    bool have_columns = false, have_rows = false;
    do {
      int amount = expect_signed_integer();
      const Token& unit = peek();
      if (accept_word("columns") || accept_word("column")) {
        if (have_columns) fail(ParseError::Kind::syntax, unit, "columns given twice");
        have_columns = true;
        d.columns = amount;
      } else if (accept_word("rows") || accept_word("row")) {
        if (have_rows) fail(ParseError::Kind::syntax, unit, "rows given twice");
        have_rows = true;
        d.rows = amount;
      } else {
        fail_expected({"'columns'", "'rows'"});
      }
    } while (accept_punct(","));
    expect_punct(")");
    return d;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::map<std::string, ParamType, std::less<>>> scopes_;
  std::map<std::string, std::vector<Param>, std::less<>> functions_;
  std::set<std::string, std::less<>> objects_;
};

}  // namespace

ParseError::ParseError(Kind kind, int line, int column, std::string message,
                       std::vector<std::string> expected)
    : Error(format_parse_error(line, column, message, expected)),
      kind_(kind),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

Program parse_program(std::string_view text) { return Parser(text).parse(); }

}  // namespace hexagons::dsl
