#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hexagons/board.hpp"
#include "hexagons/procedure.hpp"

namespace hexagons {

using Rational = boost::multiprecision::cpp_rational;

struct Score {
  Rational precision;
  Rational recall;
  Rational f1;

  friend bool operator==(const Score&, const Score&) = default;
};

// Scores hypothesis triplets against gold ones; both inputs sorted and
// duplicate free. Empty against empty scores 1, one side empty scores 0.
Score score_triplets(const std::vector<Action>& gold, const std::vector<Action>& hyp);

Score board_score(const Board& gold, const Board& hyp);
Score action_score(const ActionSet& gold, const ActionSet& hyp);

bool exact_match(const Board& gold, const Board& hyp);
bool exact_match(const ActionSet& gold, const ActionSet& hyp);

using Execution = std::variant<ActionSet, Board>;
// Throws UsageError when the two sides are of different kinds.
bool exact_match(const Execution& gold, const Execution& hyp);

enum class Mode { board, action };

struct StepEvaluation {
  Score board_score;
  Score action_score;
  bool board_em = false;
  bool action_em = false;

  const Score& score(Mode m) const { return m == Mode::board ? board_score : action_score; }
  bool em(Mode m) const { return m == Mode::board ? board_em : action_em; }

  friend bool operator==(const StepEvaluation&, const StepEvaluation&) = default;
};

StepEvaluation evaluate_step(const Board& gold_board, const ActionSet& gold_actions,
                             const Board& hyp_board, const ActionSet& hyp_actions);

struct MacroScores {
  Rational precision;
  Rational recall;
  Rational f1;
  Rational em;  // fraction of exact-match steps

  friend bool operator==(const MacroScores&, const MacroScores&) = default;
};

struct ProcedureReport {
  std::vector<StepEvaluation> steps;
  MacroScores board;
  MacroScores action;

  const MacroScores& macro(Mode m) const { return m == Mode::board ? board : action; }
  // True when every step is an exact match under `m`.
  bool all_em(Mode m) const;

  friend bool operator==(const ProcedureReport&, const ProcedureReport&) = default;
};

// Throws EmptyInputError on an empty list.
ProcedureReport macro_aggregate(std::vector<StepEvaluation> evaluations);

// Per step keeps the executor with the lowest (resp. highest) F1 under
// `mode`, first index on ties, then aggregates. Returns {min, max}.
std::pair<ProcedureReport, ProcedureReport> macro_min_max(
    const std::vector<std::vector<StepEvaluation>>& per_step_by_executor, Mode mode);

// With `oracle_prev_state` each hypothesis step is applied to the gold board
// before it; otherwise the hypothesis boards roll forward from blank.
// Throws AlignmentError when the step counts differ.
ProcedureReport evaluate_procedure(const DrawingProcedure& gold,
                                   const std::vector<ActionSet>& hyp_steps,
                                   bool oracle_prev_state);

// Decimal text rounded half-even, e.g. format_decimal(1/8, 2) = "0.12".
std::string format_decimal(const Rational& value, int places = 2);
double to_double(const Rational& value);

}  // namespace hexagons
