#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hexagons/metrics.hpp"
#include "hexagons/procedure.hpp"

namespace hexagons {

// One problem found while reading a dataset file.
struct Diagnostic {
  std::size_t line = 0;  // 1-based line in the file, 0 when not tied to a line
  std::string record_id;
  std::string message;
  int step = 0;  // offending step, 0 when not tied to a step
};

std::string to_string(const Diagnostic& d);

class FormatError : public Error {
 public:
  explicit FormatError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Record <-> one line of JSON. Boards are written only with `store_boards`;
// a record without boards gets them by replaying its actions.
std::string procedure_to_json(const DrawingProcedure& proc, bool store_boards = true);
// Throws FormatError (single diagnostic) or AlignmentError.
DrawingProcedure procedure_from_json(std::string_view line);

struct LoadResult {
  std::vector<DrawingProcedure> procedures;
  std::vector<Diagnostic> errors;  // one entry per rejected record
};

// Reads every record, collecting diagnostics instead of throwing.
LoadResult read_procedures(std::istream& in);
LoadResult read_procedures(const std::filesystem::path& path);
// Throws FormatError when any record is rejected.
std::vector<DrawingProcedure> load_procedures(const std::filesystem::path& path);
void save_procedures(const std::vector<DrawingProcedure>& procs, const std::filesystem::path& path,
                     bool store_boards = true);
void write_procedures(const std::vector<DrawingProcedure>& procs, std::ostream& out,
                      bool store_boards = true);

// Hypothesis executions of one procedure by one executor.
struct ExecutorRun {
  std::string procedure_id;
  std::string executor;
  std::vector<ActionSet> steps;

  friend bool operator==(const ExecutorRun&, const ExecutorRun&) = default;
};

std::string run_to_json(const ExecutorRun& run);
ExecutorRun run_from_json(std::string_view line);
// Accepts prediction records and full procedure records alike.
std::vector<ExecutorRun> load_runs(const std::filesystem::path& path);
void save_runs(const std::vector<ExecutorRun>& runs, const std::filesystem::path& path);

// Splits.
enum class SplitMode { random, hard };
std::string_view split_mode_name(SplitMode m);

struct Split {
  SplitMode mode = SplitMode::random;
  std::uint64_t seed = 0;
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::vector<std::string> test;

  friend bool operator==(const Split&, const Split&) = default;
};

class InfeasibleSplitError : public Error {
 public:
  InfeasibleSplitError(std::string what, std::string image_id)
      : Error(std::move(what)), image_id_(std::move(image_id)) {}
  const std::string& image_id() const { return image_id_; }

 private:
  std::string image_id_;
};

// Bucket targets for n procedures: round(0.8n), round(0.1n), the rest.
struct SplitTargets {
  std::size_t train, dev, test;
};
SplitTargets split_targets(std::size_t n);

inline constexpr std::size_t kMinSplitProcedures = 10;

// Throws UsageError below kMinSplitProcedures or on duplicate ids, and
// InfeasibleSplitError when hard mode cannot keep images apart.
Split make_split(const std::vector<DrawingProcedure>& procs, SplitMode mode, std::uint64_t seed);
std::string split_to_json(const Split& split);

// Statistics.
struct DatasetStats {
  std::size_t procedures = 0;
  std::size_t images = 0;
  std::size_t steps = 0;
  std::size_t tokens = 0;
  double steps_per_procedure = 0;
  double tokens_per_procedure = 0;
  double tokens_per_step = 0;
};

// Whitespace split, punctuation trimmed from both ends, empty pieces dropped.
std::size_t count_tokens(std::string_view text);
DatasetStats compute_stats(const std::vector<DrawingProcedure>& procs);
std::string stats_to_json(const DatasetStats& s);

// Agreement between the author's gold execution and verifying executors.
struct AgreementReport {
  std::vector<ProcedureReport> executors;
  std::vector<int> flagged_steps;  // 1-based steps no executor matched exactly
};

// Throws AlignmentError when an execution's length differs from gold, and
// EmptyInputError without executions.
AgreementReport verify_agreement(const DrawingProcedure& gold,
                                 const std::vector<std::vector<ActionSet>>& executions);

// Labelled steps with corrected actions get those actions; every board is
// replayed afterwards.
DrawingProcedure gold_corrected(const DrawingProcedure& proc);

// Evaluation of prediction files against a gold file.
enum class Aggregation { avg, min, max };
enum class EmGranularity { step, procedure };

struct EvalOptions {
  Mode mode = Mode::action;
  bool oracle_prev_state = false;
  Aggregation aggregation = Aggregation::avg;
  EmGranularity em_granularity = EmGranularity::procedure;
};

struct ProcedureEvaluation {
  std::string procedure_id;
  std::string executor;  // empty for the min/max selections
  ProcedureReport report;
};

struct DatasetReport {
  EvalOptions options;
  std::size_t procedures = 0;
  std::size_t steps = 0;  // step evaluations aggregated
  Rational precision;
  Rational recall;
  Rational f1;
  Rational step_em;
  Rational procedure_em;
  std::vector<ProcedureEvaluation> entries;

  const Rational& em() const {
    return options.em_granularity == EmGranularity::step ? step_em : procedure_em;
  }
};

// Throws AlignmentError on a missing or misaligned prediction and UsageError
// on predictions for unknown procedures.
DatasetReport evaluate_runs(const std::vector<DrawingProcedure>& gold,
                            const std::vector<ExecutorRun>& runs, const EvalOptions& options);

std::string report_to_json(const DatasetReport& report);
// Header line then one line per procedure, tab separated, two decimals.
std::string report_to_table(const DatasetReport& report);

}  // namespace hexagons
