#include "hexagons/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace hexagons {

Score score_triplets(const std::vector<Action>& gold, const std::vector<Action>& hyp) {
  if (gold.empty() && hyp.empty()) return {1, 1, 1};
  if (gold.empty() || hyp.empty()) return {0, 0, 0};
  std::size_t common = 0;
  auto g = gold.begin();
  auto h = hyp.begin();
  while (g != gold.end() && h != hyp.end()) {
    if (*g < *h) {
      ++g;
    } else if (*h < *g) {
      ++h;
    } else {
      ++common;
      ++g;
      ++h;
    }
  }
  Score s;
  s.precision = Rational(common, hyp.size());
  s.recall = Rational(common, gold.size());
  const Rational sum = s.precision + s.recall;
  s.f1 = sum == 0 ? Rational(0) : Rational(2 * s.precision * s.recall / sum);
  return s;
}

Score board_score(const Board& gold, const Board& hyp) {
  return score_triplets(painted(gold), painted(hyp));
}

Score action_score(const ActionSet& gold, const ActionSet& hyp) {
  return score_triplets(gold.actions(), hyp.actions());
}

bool exact_match(const Board& gold, const Board& hyp) { return gold == hyp; }
bool exact_match(const ActionSet& gold, const ActionSet& hyp) { return gold == hyp; }

bool exact_match(const Execution& gold, const Execution& hyp) {
  if (gold.index() != hyp.index())
    throw UsageError("exact match needs two action sets or two boards");
  if (const auto* g = std::get_if<ActionSet>(&gold)) return *g == std::get<ActionSet>(hyp);
  return std::get<Board>(gold) == std::get<Board>(hyp);
}

StepEvaluation evaluate_step(const Board& gold_board, const ActionSet& gold_actions,
                             const Board& hyp_board, const ActionSet& hyp_actions) {
  return {board_score(gold_board, hyp_board), action_score(gold_actions, hyp_actions),
          gold_board == hyp_board, gold_actions == hyp_actions};
}

bool ProcedureReport::all_em(Mode m) const {
  return std::all_of(steps.begin(), steps.end(), [m](const auto& s) { return s.em(m); });
}

namespace {

MacroScores mean_of(const std::vector<StepEvaluation>& steps, Mode m) {
  MacroScores out;
  std::size_t em = 0;
  for (const auto& s : steps) {
    const Score& sc = s.score(m);
    out.precision += sc.precision;
    out.recall += sc.recall;
    out.f1 += sc.f1;
    em += s.em(m) ? 1 : 0;
  }
  const Rational n(steps.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  out.em = Rational(em, steps.size());
  return out;
}

}  // namespace

ProcedureReport macro_aggregate(std::vector<StepEvaluation> evaluations) {
  if (evaluations.empty()) throw EmptyInputError("no steps to aggregate");
  ProcedureReport r;
  r.board = mean_of(evaluations, Mode::board);
  r.action = mean_of(evaluations, Mode::action);
  r.steps = std::move(evaluations);
  return r;
}

std::pair<ProcedureReport, ProcedureReport> macro_min_max(
    const std::vector<std::vector<StepEvaluation>>& per_step_by_executor, Mode mode) {
  std::vector<StepEvaluation> lo, hi;
  for (std::size_t i = 0; i < per_step_by_executor.size(); ++i) {
    const auto& options = per_step_by_executor[i];
    if (options.empty())
      throw EmptyInputError("step " + std::to_string(i + 1) + " has no executor evaluations");
    std::size_t min_i = 0, max_i = 0;
    for (std::size_t k = 1; k < options.size(); ++k) {
      if (options[k].score(mode).f1 < options[min_i].score(mode).f1) min_i = k;
      if (options[k].score(mode).f1 > options[max_i].score(mode).f1) max_i = k;
    }
    lo.push_back(options[min_i]);
    hi.push_back(options[max_i]);
  }
  return {macro_aggregate(std::move(lo)), macro_aggregate(std::move(hi))};
}

ProcedureReport evaluate_procedure(const DrawingProcedure& gold,
                                   const std::vector<ActionSet>& hyp_steps,
                                   bool oracle_prev_state) {
  if (hyp_steps.size() != gold.steps.size())
    throw AlignmentError("procedure " + gold.id + ": " + std::to_string(hyp_steps.size()) +
                             " hypothesis steps for " + std::to_string(gold.steps.size()) +
                             " gold steps",
                         static_cast<int>(std::min(hyp_steps.size(), gold.steps.size())) + 1);
  std::vector<StepEvaluation> evals;
  Board rolling;
  for (std::size_t i = 0; i < gold.steps.size(); ++i) {
    const auto& g = gold.steps[i];
    const Board& base = oracle_prev_state ? board_before(gold, i) : rolling;
    Board hyp_board = apply_actions(base, hyp_steps[i]);
    evals.push_back(evaluate_step(g.board_after, g.actions, hyp_board, hyp_steps[i]));
    rolling = std::move(hyp_board);
  }
  return macro_aggregate(std::move(evals));
}

std::string format_decimal(const Rational& value, int places) {
  using boost::multiprecision::cpp_int;
  cpp_int scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = value < 0;
  const Rational scaled = (negative ? Rational(-value) : value) * scale;
  const cpp_int num = boost::multiprecision::numerator(scaled);
  const cpp_int den = boost::multiprecision::denominator(scaled);
  cpp_int q = num / den;
  const cpp_int twice_rem = 2 * (num % den);
  if (twice_rem > den || (twice_rem == den && q % 2 == 1)) ++q;

  std::string digits = q.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return (negative && q != 0 ? "-" : "") + digits;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace hexagons
