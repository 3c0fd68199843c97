#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexagons/board.hpp"

// Rule-based instruction reader: finds explicit "tile N of column M" style
// references and turns them into paint actions.
namespace hexagons::naive {

enum class TokenKind { number, noun, column, color, color_verb, conjunction, punct, word };

struct Token {
  TokenKind kind = TokenKind::word;
  std::string text;  // lowercased
  int value = 0;     // numbers only
  Color color = Color::white;  // colors only
  std::size_t begin = 0;  // byte span in the instruction
  std::size_t end = 0;
};

std::vector<Token> normalize(std::string_view instruction);

enum class PatternType { type1, type2, type3 };
std::string_view pattern_name(PatternType t);

enum class Slot { num1, num2, noun, column };

// Anchors in order; at most `max_gap` word tokens between two anchors.
struct Pattern {
  PatternType type;
  std::vector<Slot> anchors;
  Slot row_from;  // the other number slot gives the column
};

const std::vector<Pattern>& default_patterns();
inline constexpr int kMaxGap = 4;

struct PaintCommand {
  int row = 0;
  int column = 0;
  Color color = Color::white;
  PatternType source = PatternType::type1;

  Action action() const { return {{column, row}, color}; }
  friend bool operator==(const PaintCommand&, const PaintCommand&) = default;
};

// PAINT((row,column),color)
std::string to_string(const PaintCommand& c);

struct ParserState {
  std::optional<Color> previous_color;
};

struct MatchResult {
  std::vector<PaintCommand> commands;
  std::vector<PaintCommand> discarded;  // off the board
};

MatchResult match_patterns(const std::vector<Token>& tokens, ParserState& state,
                           const std::vector<Pattern>& patterns = default_patterns());

using LogSink = std::function<void(const std::string&)>;

// One action set per instruction; the color state carries across the list.
std::vector<ActionSet> run_naive(const std::vector<std::string>& instructions,
                                 const LogSink& log = {});

}  // namespace hexagons::naive
