#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "hexagons/metrics.hpp"
#include "test_util.hpp"

using namespace hexagons;

namespace {

using Triplet = std::tuple<int, int, int>;

std::set<Triplet> triplets_of_board(const Board& b) {
  std::set<Triplet> out;
  for (int c = 1; c <= kColumns; ++c)
    for (int r = 1; r <= kRows; ++r)
      if (b.at({c, r}) != Color::white) out.insert({c, r, static_cast<int>(b.at({c, r}))});
  return out;
}

std::set<Triplet> triplets_of_actions(const ActionSet& a) {
  std::set<Triplet> out;
  for (const auto& x : a)
    out.insert({x.position.column, x.position.row, static_cast<int>(x.color)});
  return out;
}

// Plain counting with the F1 written as 2|G∩H| / (|G|+|H|).
Score oracle_score(const std::set<Triplet>& gold, const std::set<Triplet>& hyp) {
  if (gold.empty() && hyp.empty()) return {1, 1, 1};
  if (gold.empty() || hyp.empty()) return {0, 0, 0};
  long common = 0;
  for (const auto& t : hyp) common += gold.count(t);
  const long g = static_cast<long>(gold.size()), h = static_cast<long>(hyp.size());
  return {Rational(common, h), Rational(common, g), Rational(2 * common, g + h)};
}

Board board_of(std::initializer_list<Action> paints) {
  Board b;
  for (const auto& a : paints) b.set(a.position, a.color);
  return b;
}

StepEvaluation with_action_f1(Rational f1) {
  StepEvaluation e;
  e.action_score = {f1, f1, f1};
  e.board_score = {f1, f1, f1};
  e.action_em = e.board_em = f1 == 1;
  return e;
}

// Gold board with a perturbed copy: keeps some tiles, recolors some, adds some.
Board perturb(std::mt19937& rng, const Board& b) {
  Board out = b;
  for (const auto& a : painted(b)) {
    switch (rng() % 4) {
      case 0: out.set(a.position, Color::white); break;
      case 1: out.set(a.position, testutil::random_paint_color(rng)); break;
      default: break;
    }
  }
  const int extra = static_cast<int>(rng() % 4);
  for (int i = 0; i < extra; ++i)
    out.set(testutil::random_position(rng), testutil::random_paint_color(rng));
  return out;
}

}  // namespace

TEST_CASE("board score examples") {
  Board gold = board_of({{{1, 1}, Color::red}, {{1, 2}, Color::red}});
  Board hyp = board_of({{{1, 2}, Color::red}, {{1, 3}, Color::red}});
  Score s = board_score(gold, hyp);
  CHECK(s.precision == Rational(1, 2));
  CHECK(s.recall == Rational(1, 2));
  CHECK(s.f1 == Rational(1, 2));

  CHECK(board_score(gold, gold) == Score{1, 1, 1});
  CHECK(board_score(Board{}, Board{}) == Score{1, 1, 1});
  Score mismatch = board_score(board_of({{{1, 1}, Color::red}}), board_of({{{1, 1}, Color::blue}}));
  CHECK(mismatch == Score{0, 0, 0});
}

TEST_CASE("action score examples and conventions") {
  ActionSet one({{{1, 1}, Color::red}});
  CHECK(action_score(one, one) == Score{1, 1, 1});
  CHECK(action_score(one, ActionSet{}) == Score{0, 0, 0});
  CHECK(action_score(ActionSet{}, one) == Score{0, 0, 0});
  CHECK(action_score(ActionSet{}, ActionSet{}) == Score{1, 1, 1});
  CHECK(exact_match(ActionSet{}, ActionSet{}));

  ActionSet three({{{1, 1}, Color::red}, {{2, 2}, Color::red}, {{3, 3}, Color::red}});
  ActionSet one_right({{{1, 1}, Color::red}});
  Score s = action_score(three, one_right);
  CHECK(s.precision == 1);
  CHECK(s.recall == Rational(1, 3));
  CHECK(s.f1 == Rational(1, 2));
}

TEST_CASE("exact match") {
  ActionSet gold({{{4, 4}, Color::green}});
  ActionSet extra = gold;
  extra.assign({5, 5}, Color::green);
  CHECK(exact_match(gold, gold));
  CHECK_FALSE(exact_match(gold, extra));
  CHECK(exact_match(Execution{Board{}}, Execution{Board{}}));
  CHECK_THROWS_AS(exact_match(Execution{gold}, Execution{Board{}}), UsageError);
}

TEST_CASE("scores equal the brute-force oracle") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    Board gold = testutil::random_board(rng, 20);
    Board hyp = trial % 2 ? perturb(rng, gold) : testutil::random_board(rng, 20);
    const auto gt = triplets_of_board(gold), ht = triplets_of_board(hyp);
    CHECK(board_score(gold, hyp) == oracle_score(gt, ht));
    CHECK(exact_match(gold, hyp) == (gt == ht));

    ActionSet ga = testutil::random_actions(rng, 20);
    ActionSet ha = trial % 3 ? diff(Board{}, perturb(rng, apply_actions(Board{}, ga)))
                             : testutil::random_actions(rng, 20);
    const auto gat = triplets_of_actions(ga), hat = triplets_of_actions(ha);
    const Score s = action_score(ga, ha);
    CHECK(s == oracle_score(gat, hat));
    CHECK(exact_match(ga, ha) == (gat == hat));

    // Range, duality and EM <=> F1 = 1 on action sets.
    CHECK(s.f1 >= 0);
    CHECK(s.f1 <= 1);
    const Score swapped = action_score(ha, ga);
    CHECK(swapped.precision == s.recall);
    CHECK(swapped.f1 == s.f1);
    CHECK(board_score(hyp, gold).precision == board_score(gold, hyp).recall);
    CHECK(exact_match(ga, ha) == (s.f1 == 1));
  }
}

TEST_CASE("recall is monotone in correct actions") {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 300; ++trial) {
    ActionSet gold = testutil::random_actions(rng, 15);
    ActionSet hyp = testutil::random_actions(rng, 15);
    for (const auto& a : gold) {
      if (hyp.color_at(a.position) == a.color) continue;
      if (hyp.contains(a.position)) continue;
      ActionSet more = hyp;
      more.assign(a.position, a.color);
      CHECK(action_score(gold, more).recall >= action_score(gold, hyp).recall);
      break;
    }
  }
}

TEST_CASE("macro aggregate") {
  CHECK_THROWS_AS(macro_aggregate({}), EmptyInputError);
  auto perfect = macro_aggregate({with_action_f1(1), with_action_f1(1)});
  CHECK(perfect.action.f1 == 1);
  CHECK(perfect.action.em == 1);
  auto half = macro_aggregate({with_action_f1(1), with_action_f1(0)});
  CHECK(half.action.f1 == Rational(1, 2));
  CHECK(half.action.em == Rational(1, 2));
  CHECK(half.steps.size() == 2);

  std::mt19937 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<StepEvaluation> evals;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) evals.push_back(with_action_f1(Rational(rng() % 9, 8)));
    auto report = macro_aggregate(evals);
    // Recompute with integer eighths.
    long eighths = 0;
    for (const auto& e : evals)
      eighths += static_cast<long>(boost::multiprecision::numerator(Rational(e.action_score.f1 * 8)));
    CHECK(report.action.f1 == Rational(eighths, 8L * n));
    CHECK(report.action.f1 >= 0);
    CHECK(report.action.f1 <= 1);
  }
}

TEST_CASE("macro min and max") {
  std::vector<std::vector<StepEvaluation>> table = {
      {with_action_f1(Rational(2, 10)), with_action_f1(Rational(8, 10))},
      {with_action_f1(Rational(6, 10)), with_action_f1(Rational(4, 10))},
  };
  auto [lo, hi] = macro_min_max(table, Mode::action);
  CHECK(hi.action.f1 == Rational(7, 10));
  CHECK(lo.action.f1 == Rational(3, 10));
  CHECK(format_decimal(hi.action.f1) == "0.70");

  std::vector<std::vector<StepEvaluation>> single = {{with_action_f1(Rational(1, 3))},
                                                     {with_action_f1(1)}};
  auto [lo1, hi1] = macro_min_max(single, Mode::action);
  auto plain = macro_aggregate({single[0][0], single[1][0]});
  CHECK(lo1 == plain);
  CHECK(hi1 == plain);
  CHECK_THROWS_AS(macro_min_max({{}}, Mode::action), EmptyInputError);

  // Envelope over every executor selection.
  std::mt19937 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int steps = 1 + static_cast<int>(rng() % 4);
    const int executors = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<StepEvaluation>> t(static_cast<std::size_t>(steps));
    for (auto& row : t)
      for (int e = 0; e < executors; ++e) row.push_back(with_action_f1(Rational(rng() % 5, 4)));
    auto [mn, mx] = macro_min_max(t, Mode::action);
    int combos = 1;
    for (int s = 0; s < steps; ++s) combos *= executors;
    for (int code = 0; code < combos; ++code) {
      std::vector<StepEvaluation> pick;
      int k = code;
      for (const auto& row : t) {
        pick.push_back(row[static_cast<std::size_t>(k % executors)]);
        k /= executors;
      }
      auto r = macro_aggregate(pick);
      CHECK(mn.action.f1 <= r.action.f1);
      CHECK(r.action.f1 <= mx.action.f1);
    }
  }
}

TEST_CASE("evaluate procedure") {
  DrawingProcedure gold;
  gold.id = "p1";
  append_step(gold, "paint the first tile red", ActionSet({{{1, 1}, Color::red}}));
  append_step(gold, "paint the one below it red", ActionSet({{{1, 2}, Color::red}}));

  auto perfect = evaluate_procedure(gold, {gold.steps[0].actions, gold.steps[1].actions}, false);
  CHECK(perfect.action.f1 == 1);
  CHECK(perfect.board.em == 1);
  CHECK(perfect.all_em(Mode::action));

  std::vector<ActionSet> wrong_first = {ActionSet({{{5, 5}, Color::red}}), gold.steps[1].actions};
  auto oracle = evaluate_procedure(gold, wrong_first, true);
  CHECK(oracle.steps[1].board_em);
  CHECK(oracle.steps[1].board_score == Score{1, 1, 1});
  CHECK_FALSE(oracle.steps[0].action_em);

  auto rolling = evaluate_procedure(gold, wrong_first, false);
  CHECK(rolling.steps[1].action_em);
  CHECK_FALSE(rolling.steps[1].board_em);
  // Replay by hand: hyp board {(5,5),(1,2)} against gold {(1,1),(1,2)}.
  CHECK(rolling.steps[1].board_score == Score{Rational(1, 2), Rational(1, 2), Rational(1, 2)});

  CHECK_THROWS_AS(evaluate_procedure(gold, {gold.steps[0].actions}, false), AlignmentError);

  // Random procedures against a step-by-step replay.
  std::mt19937 rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    DrawingProcedure g;
    std::vector<ActionSet> hyp;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      append_step(g, "step", testutil::random_actions(rng, 6));
      hyp.push_back(rng() % 2 ? g.steps.back().actions : testutil::random_actions(rng, 6));
    }
    for (bool oracle_mode : {false, true}) {
      auto report = evaluate_procedure(g, hyp, oracle_mode);
      Board replay;
      for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        Board base = oracle_mode ? (i ? g.steps[idx - 1].board_after : Board{}) : replay;
        for (const auto& a : hyp[idx]) base.set(a.position, a.color);
        CHECK(report.steps[idx].board_score ==
              oracle_score(triplets_of_board(g.steps[idx].board_after), triplets_of_board(base)));
        CHECK(report.steps[idx].action_score ==
              oracle_score(triplets_of_actions(g.steps[idx].actions), triplets_of_actions(hyp[idx])));
        replay = base;
      }
    }
  }
}

TEST_CASE("decimal formatting rounds half to even") {
  CHECK(format_decimal(Rational(1, 8)) == "0.12");
  CHECK(format_decimal(Rational(3, 8)) == "0.38");
  CHECK(format_decimal(Rational(5, 8)) == "0.62");
  CHECK(format_decimal(Rational(1, 3)) == "0.33");
  CHECK(format_decimal(Rational(2, 3)) == "0.67");
  CHECK(format_decimal(Rational(1)) == "1.00");
  CHECK(format_decimal(Rational(0)) == "0.00");
  CHECK(format_decimal(Rational(1, 200)) == "0.00");
  CHECK(format_decimal(Rational(3, 200)) == "0.02");
  CHECK(format_decimal(Rational(-1, 8)) == "-0.12");
  CHECK(format_decimal(Rational(7, 3), 0) == "2");
  CHECK(to_double(Rational(1, 4)) == 0.25);
}
