#include <map>
#include <set>
#include <sstream>

#include "hexagons/dataset.hpp"
#include "json_io.hpp"

namespace hexagons {

using jsonio::json;

namespace {

std::string_view mode_name(Mode m) { return m == Mode::board ? "board" : "action"; }

std::string_view aggregation_name(Aggregation a) {
  switch (a) {
    case Aggregation::avg: return "avg";
    case Aggregation::min: return "min";
    case Aggregation::max: return "max";
  }
  return "";
}

}  // namespace

DatasetReport evaluate_runs(const std::vector<DrawingProcedure>& gold,
                            const std::vector<ExecutorRun>& runs, const EvalOptions& options) {
  std::map<std::string, std::vector<const ExecutorRun*>> by_id;
  for (const auto& r : runs) by_id[r.procedure_id].push_back(&r);
  std::set<std::string> gold_ids;
  for (const auto& g : gold) gold_ids.insert(g.id);
  for (const auto& [id, _] : by_id)
    if (!gold_ids.count(id)) throw UsageError("prediction for unknown procedure " + id);

  DatasetReport out;
  out.options = options;
  std::vector<StepEvaluation> pooled;
  std::size_t procedure_hits = 0, procedure_items = 0;
  for (const auto& g : gold) {
    auto it = by_id.find(g.id);
    if (it == by_id.end())
      throw AlignmentError("no prediction for procedure " + g.id, 0);
    std::vector<ProcedureReport> reports;
    for (const ExecutorRun* r : it->second) {
      reports.push_back(evaluate_procedure(g, r->steps, options.oracle_prev_state));
      if (options.aggregation == Aggregation::avg) {
        out.entries.push_back({g.id, r->executor, reports.back()});
        pooled.insert(pooled.end(), reports.back().steps.begin(), reports.back().steps.end());
        ++procedure_items;
        procedure_hits += reports.back().all_em(options.mode) ? 1 : 0;
      }
    }
    if (options.aggregation != Aggregation::avg) {
      std::vector<std::vector<StepEvaluation>> table(g.steps.size());
      for (const auto& rep : reports)
        for (std::size_t i = 0; i < rep.steps.size(); ++i) table[i].push_back(rep.steps[i]);
      auto [lo, hi] = macro_min_max(table, options.mode);
      ProcedureReport& chosen = options.aggregation == Aggregation::min ? lo : hi;
      pooled.insert(pooled.end(), chosen.steps.begin(), chosen.steps.end());
      ++procedure_items;
      procedure_hits += chosen.all_em(options.mode) ? 1 : 0;
      out.entries.push_back({g.id, "", std::move(chosen)});
    }
  }
  out.procedures = gold.size();
  out.steps = pooled.size();
  if (!pooled.empty()) {
    const ProcedureReport all = macro_aggregate(std::move(pooled));
    const MacroScores& m = all.macro(options.mode);
    out.precision = m.precision;
    out.recall = m.recall;
    out.f1 = m.f1;
    out.step_em = m.em;
    out.procedure_em = Rational(procedure_hits, procedure_items);
  }
  return out;
}

std::string report_to_json(const DatasetReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json steps = json::array();
    int i = 0;
    for (const auto& s : e.report.steps)
      steps.push_back({{"index", ++i},
                       {"board", jsonio::score_to_json(s.board_score)},
                       {"action", jsonio::score_to_json(s.action_score)},
                       {"board_em", s.board_em},
                       {"action_em", s.action_em}});
    const MacroScores& m = e.report.macro(report.options.mode);
    json entry{{"id", e.procedure_id},
               {"f1", to_double(m.f1)},
               {"em", to_double(m.em)},
               {"procedure_em", e.report.all_em(report.options.mode)},
               {"steps", std::move(steps)}};
    if (!e.executor.empty()) entry["executor"] = e.executor;
    entries.push_back(std::move(entry));
  }
  json j{{"mode", std::string(mode_name(report.options.mode))},
         {"oracle_prev", report.options.oracle_prev_state},
         {"agg", std::string(aggregation_name(report.options.aggregation))},
         {"em_granularity",
          report.options.em_granularity == EmGranularity::step ? "step" : "procedure"},
         {"procedures", report.procedures},
         {"steps", report.steps},
         {"precision", to_double(report.precision)},
         {"recall", to_double(report.recall)},
         {"f1", to_double(report.f1)},
         {"em", to_double(report.em())},
         {"step_em", to_double(report.step_em)},
         {"procedure_em", to_double(report.procedure_em)},
         {"entries", std::move(entries)}};
  return j.dump();
}

std::string report_to_table(const DatasetReport& report) {
  std::ostringstream out;
  out << "id\texecutor\tsteps\tprecision\trecall\tf1\tem\n";
  for (const auto& e : report.entries) {
    const MacroScores& m = e.report.macro(report.options.mode);
    const Rational em = report.options.em_granularity == EmGranularity::step
                            ? m.em
                            : Rational(e.report.all_em(report.options.mode) ? 1 : 0);
    out << e.procedure_id << '\t' << (e.executor.empty() ? "-" : e.executor) << '\t'
        << e.report.steps.size() << '\t' << format_decimal(m.precision) << '\t'
        << format_decimal(m.recall) << '\t' << format_decimal(m.f1) << '\t' << format_decimal(em)
        << '\n';
  }
  out << "macro\t" << aggregation_name(report.options.aggregation) << '\t' << report.steps << '\t'
      << format_decimal(report.precision) << '\t' << format_decimal(report.recall) << '\t'
      << format_decimal(report.f1) << '\t' << format_decimal(report.em()) << '\n';
  return out.str();
}

}  // namespace hexagons
