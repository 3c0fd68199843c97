#include "hexagons/naive.hpp"

#include <array>
#include <cctype>
#include <map>

namespace hexagons::naive {

namespace {

const std::map<std::string_view, int>& number_words() {
  static const std::map<std::string_view, int> words = [] {
    constexpr std::array<std::string_view, 21> cardinals{
        "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
        "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen",
        "eighteen", "nineteen", "twenty"};
    constexpr std::array<std::string_view, 21> ordinals{
        "", "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth",
        "ninth", "tenth", "eleventh", "twelfth", "thirteenth", "fourteenth", "fifteenth",
        "sixteenth", "seventeenth", "eighteenth", "nineteenth", "twentieth"};
    std::map<std::string_view, int> m;
    for (int i = 0; i <= 20; ++i) {
      m[cardinals[static_cast<std::size_t>(i)]] = i;
      if (i > 0) m[ordinals[static_cast<std::size_t>(i)]] = i;
    }
    return m;
  }();
  return words;
}

const std::map<std::string_view, Color> kColorWords{
    {"white", Color::white},   {"black", Color::black},   {"red", Color::red},
    {"orange", Color::orange}, {"yellow", Color::yellow}, {"green", Color::green},
    {"blue", Color::blue},     {"purple", Color::purple}, {"violet", Color::purple},
    {"lilac", Color::purple},  {"magenta", Color::purple}, {"crimson", Color::red},
    {"scarlet", Color::red},   {"navy", Color::blue},     {"gold", Color::yellow},
    {"golden", Color::yellow}, {"lime", Color::green},
};

bool is_noun(std::string_view w) {
  static constexpr std::array<std::string_view, 10> nouns{
      "tile", "tiles", "hex", "hexes", "hexagon", "hexagons", "spot", "spots", "cell", "cells"};
  for (auto n : nouns)
    if (n == w) return true;
  return false;
}

bool is_color_verb(std::string_view w) {
  static constexpr std::array<std::string_view, 8> verbs{
      "color", "colour", "colors", "colours", "colored", "coloured", "coloring", "colouring"};
  for (auto v : verbs)
    if (v == w) return true;
  return false;
}

// "4", "4th", "21st", "2nd", "3rd".
std::optional<int> numeric_value(std::string_view w) {
  std::size_t i = 0;
  while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
  if (i == 0 || i > 6) return std::nullopt;
  const std::string_view suffix = w.substr(i);
  if (!suffix.empty() && suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th")
    return std::nullopt;
  return std::stoi(std::string(w.substr(0, i)));
}

Token classify(std::string text, std::size_t begin, std::size_t end) {
  Token t;
  t.begin = begin;
  t.end = end;
  if (auto n = numeric_value(text)) {
    t.kind = TokenKind::number;
    t.value = *n;
  } else if (auto it = number_words().find(text); it != number_words().end()) {
    t.kind = TokenKind::number;
    t.value = it->second;
  } else if (auto c = kColorWords.find(text); c != kColorWords.end()) {
    t.kind = TokenKind::color;
    t.color = c->second;
  } else if (is_noun(text)) {
    t.kind = TokenKind::noun;
  } else if (text == "column" || text == "columns" || text == "col") {
    t.kind = TokenKind::column;
  } else if (is_color_verb(text)) {
    t.kind = TokenKind::color_verb;
  } else if (text == "and" || text == "&") {
    t.kind = TokenKind::conjunction;
  }
  t.text = std::move(text);
  return t;
}

struct Group {
  std::vector<int> values;
  std::size_t end = 0;  // one past the last token of the group
};

// A number, or a list such as "4, 5 and 6", starting at token i.
std::optional<Group> number_group(const std::vector<Token>& toks, std::size_t i) {
  if (i >= toks.size() || toks[i].kind != TokenKind::number) return std::nullopt;
  Group g;
  g.values.push_back(toks[i].value);
  g.end = i + 1;
  while (true) {
    std::size_t j = g.end;
    bool sep = false;
    if (j < toks.size() && toks[j].text == ",") {
      ++j;
      sep = true;
    }
    if (j < toks.size() && toks[j].kind == TokenKind::conjunction) {
      ++j;
      sep = true;
    }
    if (!sep || j >= toks.size() || toks[j].kind != TokenKind::number) break;
    g.values.push_back(toks[j].value);
    g.end = j + 1;
  }
  return g;
}

struct Match {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::vector<int> num1;
  std::vector<int> num2;
};

// Anchor `k` may start at any token after `from` with at most kMaxGap word
// tokens skipped; earlier candidates are tried first.
bool match_from(const std::vector<Token>& toks, const Pattern& p, std::size_t k, std::size_t from,
                Match& m) {
  if (k == p.anchors.size()) {
    m.end = from;
    return true;
  }
  int gap = 0;
  for (std::size_t j = from; j < toks.size(); ++j) {
    const Slot slot = p.anchors[k];
    std::size_t next = 0;
    std::vector<int> values;
    bool hit = false;
    if (slot == Slot::num1 || slot == Slot::num2) {
      if (auto g = number_group(toks, j)) {
        hit = true;
        next = g->end;
        values = std::move(g->values);
      }
    } else if (toks[j].kind == (slot == Slot::noun ? TokenKind::noun : TokenKind::column)) {
      hit = true;
      next = j + 1;
    }
    if (hit) {
      auto saved = slot == Slot::num1 ? m.num1 : m.num2;
      if (slot == Slot::num1) m.num1 = values;
      if (slot == Slot::num2) m.num2 = values;
      if (match_from(toks, p, k + 1, next, m)) return true;
      if (slot == Slot::num1) m.num1 = saved;
      if (slot == Slot::num2) m.num2 = saved;
    }
    if (k == 0) return false;  // the first anchor is tried at `from` only
    if (toks[j].kind != TokenKind::punct && ++gap > kMaxGap) return false;
  }
  return false;
}

std::vector<Match> find_all(const std::vector<Token>& toks, const Pattern& p) {
  std::vector<Match> out;
  std::size_t i = 0;
  while (i < toks.size()) {
    Match m;
    m.begin = i;
    if (match_from(toks, p, 0, i, m)) {
      out.push_back(m);
      i = m.end;
    } else {
      ++i;
    }
  }
  return out;
}

std::optional<Color> color_for(const std::vector<Token>& toks, const Match& m) {
  for (std::size_t j = m.end; j < toks.size(); ++j)
    if (toks[j].kind == TokenKind::color) return toks[j].color;
  for (std::size_t j = m.begin; j-- > 0;)
    if (toks[j].kind == TokenKind::color) return toks[j].color;
  return std::nullopt;
}

}  // namespace

std::vector<Token> normalize(std::string_view instruction) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto word_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0; };
  while (i < instruction.size()) {
    const char ch = instruction[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    std::string text;
    if (word_char(ch)) {
      while (i < instruction.size() && word_char(instruction[i]))
        text += static_cast<char>(std::tolower(static_cast<unsigned char>(instruction[i++])));
    } else if (static_cast<unsigned char>(ch) >= 0x80) {
      // Keep multi-byte sequences together as one opaque word.
      while (i < instruction.size() && static_cast<unsigned char>(instruction[i]) >= 0x80)
        text += instruction[i++];
    } else {
      text = std::string(1, ch);
      ++i;
    }
    Token t = classify(std::move(text), begin, i);
    if (t.kind == TokenKind::word && t.text.size() == 1 && !word_char(t.text[0]) &&
        t.text != "&" && static_cast<unsigned char>(t.text[0]) < 0x80)
      t.kind = TokenKind::punct;
    out.push_back(std::move(t));
  }
  return out;
}

std::string_view pattern_name(PatternType t) {
  switch (t) {
    case PatternType::type1: return "Type1";
    case PatternType::type2: return "Type2";
    case PatternType::type3: return "Type3";
  }
  return "";
}

const std::vector<Pattern>& default_patterns() {
  static const std::vector<Pattern> patterns{
      {PatternType::type1, {Slot::num1, Slot::noun, Slot::num2, Slot::column}, Slot::num1},
      {PatternType::type2, {Slot::num1, Slot::column, Slot::num2}, Slot::num2},
      {PatternType::type3, {Slot::column, Slot::num1, Slot::noun, Slot::num2}, Slot::num2},
  };
  return patterns;
}

std::string to_string(const PaintCommand& c) {
  return "PAINT((" + std::to_string(c.row) + "," + std::to_string(c.column) + ")," +
         std::string(color_name(c.color)) + ")";
}

MatchResult match_patterns(const std::vector<Token>& tokens, ParserState& state,
                           const std::vector<Pattern>& patterns) {
  MatchResult result;
  for (const auto& p : patterns) {
    auto matches = find_all(tokens, p);
    if (matches.empty()) continue;
    for (const auto& m : matches) {
      std::optional<Color> color = color_for(tokens, m);
      if (color)
        state.previous_color = color;
      else
        color = state.previous_color;
      if (!color) continue;
      const auto& rows = p.row_from == Slot::num1 ? m.num1 : m.num2;
      const auto& cols = p.row_from == Slot::num1 ? m.num2 : m.num1;
      for (int r : rows)
        for (int c : cols) {
          PaintCommand cmd{r, c, *color, p.type};
          (in_bounds({c, r}) ? result.commands : result.discarded).push_back(cmd);
        }
    }
    break;
  }
  return result;
}

std::vector<ActionSet> run_naive(const std::vector<std::string>& instructions, const LogSink& log) {
  std::vector<ActionSet> out;
  ParserState state;
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    MatchResult r = match_patterns(normalize(instructions[i]), state);
    if (log)
      for (const auto& d : r.discarded)
        log("step " + std::to_string(i + 1) + ": discarded off-board " + to_string(d));
    ActionSet actions;
    for (const auto& c : r.commands) actions.assign(c.action().position, c.color);
    out.push_back(std::move(actions));
  }
  return out;
}

}  // namespace hexagons::naive
