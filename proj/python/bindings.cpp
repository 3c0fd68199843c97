#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hexagons/dataset.hpp"
#include "hexagons/dsl.hpp"
#include "hexagons/geometry.hpp"
#include "hexagons/metrics.hpp"
#include "hexagons/naive.hpp"

namespace py = pybind11;
using namespace hexagons;

namespace {

using Triple = std::tuple<int, int, std::string>;

ActionSet to_actions(const std::vector<Triple>& in) {
  std::vector<Action> out;
  for (const auto& [c, r, name] : in) {
    auto color = color_from_name(name);
    if (!color) throw UsageError("unknown color \"" + name + "\"");
    out.push_back({{c, r}, *color});
  }
  return ActionSet(std::move(out));
}

std::vector<Triple> from_actions(const ActionSet& a) {
  std::vector<Triple> out;
  for (const auto& x : a) out.emplace_back(x.position.column, x.position.row, std::string(color_name(x.color)));
  return out;
}

py::object fraction(const Rational& q) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  std::ostringstream num, den;
  num << numerator(q);
  den << denominator(q);
  return Fraction(py::int_(py::str(num.str())), py::int_(py::str(den.str())));
}

py::tuple score_tuple(const Score& s) {
  return py::make_tuple(fraction(s.precision), fraction(s.recall), fraction(s.f1));
}

}  // namespace

PYBIND11_MODULE(_hexagons, m) {
  m.doc() = "Hex-board drawing procedures: boards, DSL, metrics, naive baseline, datasets";

  py::register_exception<Error>(m, "HexagonsError", PyExc_ValueError);

  m.attr("COLUMNS") = kColumns;
  m.attr("ROWS") = kRows;
  std::vector<std::string> colors;
  for (const auto& e : kPalette) colors.emplace_back(e.name);
  m.attr("COLORS") = colors;

  m.def("neighbors", [](int c, int r) {
    std::vector<std::pair<int, int>> out;
    for (Position p : neighbors(Position{c, r})) out.emplace_back(p.column, p.row);
    return out;
  }, py::arg("column"), py::arg("row"));

  m.def("apply_actions", [](const std::string& grid, const std::vector<Triple>& actions) {
    return to_letter_grid(apply_actions(parse_letter_grid(grid), to_actions(actions)));
  }, py::arg("grid"), py::arg("actions"));
  m.def("diff", [](const std::string& before, const std::string& after) {
    return from_actions(diff(parse_letter_grid(before), parse_letter_grid(after)));
  });
  m.def("blank_grid", [] { return to_letter_grid(Board{}); });
  m.def("render_svg", [](const std::string& grid) { return render_svg(parse_letter_grid(grid)); });

  m.def("run_dsl", [](const std::string& source) {
    std::vector<std::pair<std::vector<Triple>, std::string>> out;
    for (const auto& s : dsl::eval_program(dsl::parse_program(source), Board{}))
      out.emplace_back(from_actions(s.actions), to_letter_grid(s.board));
    return out;
  }, py::arg("source"), "One (actions, grid) pair per top-level statement.");

  m.def("run_naive", [](const std::vector<std::string>& instructions) {
    std::vector<std::vector<Triple>> out;
    for (const auto& a : naive::run_naive(instructions)) out.push_back(from_actions(a));
    return out;
  }, py::arg("instructions"));

  m.def("action_score", [](const std::vector<Triple>& gold, const std::vector<Triple>& hyp) {
    return score_tuple(action_score(to_actions(gold), to_actions(hyp)));
  }, "(precision, recall, f1) as Fractions");
  m.def("board_score", [](const std::string& gold, const std::string& hyp) {
    return score_tuple(board_score(parse_letter_grid(gold), parse_letter_grid(hyp)));
  }, "(precision, recall, f1) as Fractions");

  m.def("stats_json", [](const std::string& path) {
    return stats_to_json(compute_stats(load_procedures(path)));
  });
  m.def("split_json", [](const std::string& path, const std::string& mode, std::uint64_t seed) {
    if (mode != "random" && mode != "hard") throw UsageError("mode must be random or hard");
    return split_to_json(make_split(load_procedures(path), mode == "hard" ? SplitMode::hard : SplitMode::random, seed));
  }, py::arg("path"), py::arg("mode"), py::arg("seed"));
  m.def("eval_json", [](const std::string& gold, const std::string& pred, const std::string& mode,
                        bool oracle_prev, const std::string& agg, const std::string& em_granularity) {
    EvalOptions opt;
    opt.mode = mode == "board" ? Mode::board : Mode::action;
    opt.oracle_prev_state = oracle_prev;
    opt.aggregation = agg == "min" ? Aggregation::min : agg == "max" ? Aggregation::max : Aggregation::avg;
    opt.em_granularity = em_granularity == "step" ? EmGranularity::step : EmGranularity::procedure;
    return report_to_json(evaluate_runs(load_procedures(gold), load_runs(pred), opt));
  }, py::arg("gold"), py::arg("pred"), py::arg("mode") = "action", py::arg("oracle_prev") = false,
     py::arg("agg") = "avg", py::arg("em_granularity") = "procedure");
}
