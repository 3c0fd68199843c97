#include <random>

#include "doctest.h"
#include "hexagons/naive.hpp"

using namespace hexagons;
using namespace hexagons::naive;

namespace {

std::vector<PaintCommand> commands_for(std::string_view text, ParserState state = {}) {
  return match_patterns(normalize(text), state).commands;
}

}  // namespace

TEST_CASE("normalize") {
  auto toks = normalize("Paint the 4th hex");
  REQUIRE(toks.size() == 4);
  CHECK(toks[2].kind == TokenKind::number);
  CHECK(toks[2].value == 4);
  CHECK(toks[3].kind == TokenKind::noun);
  CHECK(toks[3].text == "hex");
  CHECK(toks[3].begin == 14);
  CHECK(toks[3].end == 17);

  CHECK(normalize("first")[0].value == 1);
  CHECK(normalize("Twentieth")[0].value == 20);
  CHECK(normalize("2nd")[0].value == 2);
  CHECK(normalize("seventeen")[0].kind == TokenKind::number);
  CHECK(normalize("colour")[0].kind == TokenKind::color_verb);
  CHECK(normalize("color")[0].kind == TokenKind::color_verb);
  CHECK(normalize("violet")[0].color == Color::purple);
  CHECK(normalize("Blue")[0].color == Color::blue);
  CHECK(normalize("4x")[0].kind == TokenKind::word);
  CHECK(normalize(",")[0].kind == TokenKind::punct);
  CHECK(normalize("").empty());
  CHECK(normalize("   ").empty());
}

TEST_CASE("table examples") {
  auto t1 = commands_for("Paint the 4th hex from top of the 7th column orange from left.");
  CHECK(t1 == std::vector<PaintCommand>{{4, 7, Color::orange, PatternType::type1}});
  CHECK(to_string(t1[0]) == "PAINT((4,7),orange)");

  auto t2 = commands_for("In the first column, color the 2nd tile blue");
  CHECK(t2 == std::vector<PaintCommand>{{2, 1, Color::blue, PatternType::type2}});

  auto t3 = commands_for("In column 3 color tiles 4 and 6 red");
  CHECK(t3 == std::vector<PaintCommand>{{4, 3, Color::red, PatternType::type3},
                                        {6, 3, Color::red, PatternType::type3}});
  CHECK(t3[0].action() == Action{{3, 4}, Color::red});
}

TEST_CASE("pattern details") {
  // Lists with commas.
  CHECK(commands_for("In column 2 paint tiles 1, 3, and 5 green").size() == 3);
  // Gap of five words breaks the anchor chain.
  CHECK(commands_for("the 4th hex is far away from the top of the 7th column red").empty());
  // Several occurrences of one class all fire.
  auto two = commands_for("Paint the 1st tile of the 2nd column red and the 3rd tile of the 4th "
                          "column blue");
  CHECK(two == std::vector<PaintCommand>{{1, 2, Color::red, PatternType::type1},
                                         {3, 4, Color::blue, PatternType::type1}});
  // A color before the match is used when none follows it.
  CHECK(commands_for("Use red: the 5th tile in the 5th column")[0].color == Color::red);
  // Off-board commands are dropped.
  ParserState s;
  auto r = match_patterns(normalize("Paint the 11th tile of the 19th column red"), s);
  CHECK(r.commands.empty());
  CHECK(r.discarded.size() == 1);
}

TEST_CASE("run_naive") {
  CHECK(run_naive({}).empty());
  auto none = run_naive({"Repeat the flower pattern across the board"});
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());

  auto carry = run_naive({"In the first column, color the 2nd tile blue",
                          "In the first column, color the 3rd tile"});
  CHECK(carry[1] == ActionSet({{{1, 3}, Color::blue}}));

  // Carryover survives a step with no match.
  auto gap = run_naive({"In the first column, color the 2nd tile blue", "now make a flower",
                        "In the first column, color the 3rd tile"});
  CHECK(gap[1].empty());
  CHECK(gap[2] == ActionSet({{{1, 3}, Color::blue}}));

  // No color anywhere yet.
  CHECK(run_naive({"In the first column, color the 3rd tile"})[0].empty());

  std::vector<std::string> logged;
  run_naive({"Paint the 11th tile of the 19th column red"},
            [&](const std::string& line) { logged.push_back(line); });
  CHECK(logged.size() == 1);
}

TEST_CASE("determinism, bounds and totality on random text") {
  const std::vector<std::string> vocab = {
      "the", "tile", "tiles", "hex", "column", "columns", "red", "blue", "and", ",", "of",
      "4th", "1", "twenty", "first", "19", "0", "colour", "paint", "row", "18th", "10", "violet"};
  std::mt19937 rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::string> instructions;
    const int steps = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < steps; ++s) {
      std::string text;
      const int n = static_cast<int>(rng() % 14);
      for (int i = 0; i < n; ++i) text += vocab[rng() % vocab.size()] + " ";
      instructions.push_back(text);
    }
    auto a = run_naive(instructions);
    CHECK(a == run_naive(instructions));
    REQUIRE(a.size() == instructions.size());
    for (const auto& set : a)
      for (const auto& act : set) CHECK(in_bounds(act.position));

    // Color carryover: a color-free match fires iff a color was seen before.
    ParserState st;
    for (const auto& text : instructions) {
      const bool had = st.previous_color.has_value();
      auto toks = normalize(text);
      bool has_color = false;
      for (const auto& t : toks) has_color = has_color || t.kind == TokenKind::color;
      auto r = match_patterns(toks, st);
      if (!has_color && !had) CHECK(r.commands.empty());
    }
  }
}
