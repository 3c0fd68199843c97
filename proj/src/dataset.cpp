#include "hexagons/dataset.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json_io.hpp"

namespace hexagons {

using jsonio::json;

std::string to_string(const Diagnostic& d) {
  std::string out;
  if (d.line) out += "line " + std::to_string(d.line) + ": ";
  if (!d.record_id.empty()) out += "record " + d.record_id + ": ";
  if (d.step) out += "step " + std::to_string(d.step) + ": ";
  return out + d.message;
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "\n";
    out += to_string(d);
  }
  return out.empty() ? "invalid data" : out;
}

Diagnostic diagnostic(std::string id, std::string message, int step = 0) {
  Diagnostic d;
  d.record_id = std::move(id);
  d.message = std::move(message);
  d.step = step;
  return d;
}

json qa_to_json(const QaLabel& q) {
  json j{{"step", q.step}, {"category", std::string(qa_category_name(q.category))}};
  if (q.corrected_actions) j["corrected_actions"] = jsonio::actions_to_json(*q.corrected_actions);
  if (!q.note.empty()) j["note"] = q.note;
  return j;
}

QaLabel qa_from_json(const json& j) {
  QaLabel q;
  q.step = jsonio::require_int(j, "step");
  const std::string cat = jsonio::require_string(j, "category");
  auto c = qa_category_from_name(cat);
  if (!c) throw jsonio::ShapeError("unknown QA category \"" + cat + "\"");
  q.category = *c;
  if (auto it = j.find("corrected_actions"); it != j.end() && !it->is_null())
    q.corrected_actions = jsonio::actions_from_json(*it);
  if (auto it = j.find("note"); it != j.end()) {
    if (!it->is_string()) throw jsonio::ShapeError("QA note must be a string");
    q.note = it->get<std::string>();
  }
  return q;
}

std::vector<std::string> lines_of(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
  }
  return out;
}

bool blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

}  // namespace

FormatError::FormatError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::string procedure_to_json(const DrawingProcedure& proc, bool store_boards) {
  json steps = json::array();
  for (const auto& s : proc.steps) {
    json step{{"index", s.index},
              {"instruction", s.instruction},
              {"actions", jsonio::actions_to_json(s.actions)}};
    if (store_boards) step["board_after"] = jsonio::board_to_json(s.board_after);
    steps.push_back(std::move(step));
  }
  json j{{"id", proc.id},
         {"image_id", proc.image_id},
         {"author_role", std::string(role_name(proc.author_role))},
         {"steps", std::move(steps)}};
  if (!proc.qa_labels.empty()) {
    json labels = json::array();
    for (const auto& q : proc.qa_labels) labels.push_back(qa_to_json(q));
    j["qa_labels"] = std::move(labels);
  }
  return j.dump();
}

DrawingProcedure procedure_from_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw FormatError({diagnostic("", std::string("malformed JSON: ") + e.what())});
  }
  DrawingProcedure proc;
  if (j.is_object())
    if (auto it = j.find("id"); it != j.end() && it->is_string()) proc.id = it->get<std::string>();
  int step_no = 0;
  try {
    proc.id = jsonio::require_string(j, "id");
    if (proc.id.empty()) throw jsonio::ShapeError("empty id");
    proc.image_id = jsonio::require_string(j, "image_id");
    const std::string role = jsonio::require_string(j, "author_role");
    auto r = role_from_name(role);
    if (!r) throw jsonio::ShapeError("unknown author_role \"" + role + "\"");
    proc.author_role = *r;

    const json& steps = jsonio::require(j, "steps");
    if (!steps.is_array() || steps.empty())
      throw jsonio::ShapeError("steps must be a non-empty array");
    for (const auto& s : steps) {
      ++step_no;
      DrawingStep step;
      step.index = jsonio::require_int(s, "index");
      if (step.index != step_no)
        throw jsonio::ShapeError("step index " + std::to_string(step.index) + " where " +
                                 std::to_string(step_no) + " was expected");
      step.instruction = jsonio::require_string(s, "instruction");
      step.actions = jsonio::actions_from_json(jsonio::require(s, "actions"));
      const Board& prev = board_before(proc, proc.steps.size());
      if (auto it = s.find("board_after"); it != s.end()) {
        step.board_after = jsonio::board_from_json(*it);
        if (apply_actions(prev, step.actions) != step.board_after)
          throw AlignmentError("procedure " + proc.id + ": step " + std::to_string(step_no) +
                                   " board does not match its actions",
                               step_no);
      } else {
        step.board_after = apply_actions(prev, step.actions);
      }
      proc.steps.push_back(std::move(step));
    }
    step_no = 0;
    if (auto it = j.find("qa_labels"); it != j.end()) {
      if (!it->is_array()) throw jsonio::ShapeError("qa_labels must be an array");
      for (const auto& q : *it) {
        QaLabel label = qa_from_json(q);
        if (label.step < 1 || label.step > static_cast<int>(proc.steps.size()))
          throw jsonio::ShapeError("QA label refers to missing step " + std::to_string(label.step));
        proc.qa_labels.push_back(std::move(label));
      }
    }
  } catch (const AlignmentError&) {
    throw;
  } catch (const jsonio::ShapeError& e) {
    throw FormatError({diagnostic(proc.id, e.what(), step_no)});
  } catch (const json::exception& e) {
    throw FormatError({diagnostic(proc.id, e.what(), step_no)});
  }
  return proc;
}

LoadResult read_procedures(std::istream& in) {
  LoadResult result;
  std::set<std::string> seen;
  const auto lines = lines_of(in);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    try {
      DrawingProcedure p = procedure_from_json(lines[i]);
      if (!seen.insert(p.id).second) {
        result.errors.push_back(diagnostic(p.id, "duplicate procedure id"));
        result.errors.back().line = i + 1;
        continue;
      }
      result.procedures.push_back(std::move(p));
    } catch (const FormatError& e) {
      for (Diagnostic d : e.diagnostics()) {
        d.line = i + 1;
        result.errors.push_back(std::move(d));
      }
    } catch (const AlignmentError& e) {
      Diagnostic d = diagnostic("", e.what(), e.step());
      d.line = i + 1;
      result.errors.push_back(std::move(d));
    }
  }
  return result;
}

LoadResult read_procedures(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_procedures(in);
}

std::vector<DrawingProcedure> load_procedures(const std::filesystem::path& path) {
  LoadResult r = read_procedures(path);
  if (!r.errors.empty()) throw FormatError(std::move(r.errors));
  return std::move(r.procedures);
}

void write_procedures(const std::vector<DrawingProcedure>& procs, std::ostream& out,
                      bool store_boards) {
  for (const auto& p : procs) out << procedure_to_json(p, store_boards) << '\n';
}

void save_procedures(const std::vector<DrawingProcedure>& procs, const std::filesystem::path& path,
                     bool store_boards) {
  auto out = open_out(path);
  write_procedures(procs, out, store_boards);
  if (!out) throw UsageError("failed writing " + path.string());
}

std::string run_to_json(const ExecutorRun& run) {
  json steps = json::array();
  int i = 0;
  for (const auto& s : run.steps)
    steps.push_back({{"index", ++i}, {"actions", jsonio::actions_to_json(s)}});
  json j{{"id", run.procedure_id}, {"steps", std::move(steps)}};
  if (!run.executor.empty()) j["executor"] = run.executor;
  return j.dump();
}

ExecutorRun run_from_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw FormatError({diagnostic("", std::string("malformed JSON: ") + e.what())});
  }
  ExecutorRun run;
  int step_no = 0;
  try {
    run.procedure_id = jsonio::require_string(j, "id");
    if (auto it = j.find("executor"); it != j.end()) {
      if (!it->is_string()) throw jsonio::ShapeError("executor must be a string");
      run.executor = it->get<std::string>();
    }
    const json& steps = jsonio::require(j, "steps");
    if (!steps.is_array()) throw jsonio::ShapeError("steps must be an array");
    for (const auto& s : steps) {
      ++step_no;
      if (auto it = s.find("index"); it != s.end() && (!it->is_number_integer() || *it != step_no))
        throw jsonio::ShapeError("step index out of sequence");
      run.steps.push_back(jsonio::actions_from_json(jsonio::require(s, "actions")));
    }
  } catch (const jsonio::ShapeError& e) {
    throw FormatError({diagnostic(run.procedure_id, e.what(), step_no)});
  } catch (const json::exception& e) {
    throw FormatError({diagnostic(run.procedure_id, e.what(), step_no)});
  }
  return run;
}

std::vector<ExecutorRun> load_runs(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<ExecutorRun> runs;
  std::vector<Diagnostic> errors;
  const auto lines = lines_of(in);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    try {
      runs.push_back(run_from_json(lines[i]));
    } catch (const FormatError& e) {
      for (Diagnostic d : e.diagnostics()) {
        d.line = i + 1;
        errors.push_back(std::move(d));
      }
    }
  }
  if (!errors.empty()) throw FormatError(std::move(errors));
  return runs;
}

void save_runs(const std::vector<ExecutorRun>& runs, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (const auto& r : runs) out << run_to_json(r) << '\n';
  if (!out) throw UsageError("failed writing " + path.string());
}

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  std::istringstream in{std::string(text)};
  std::string word;
  auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  while (in >> word) {
    std::size_t b = 0, e = word.size();
    while (b < e && punct(word[b])) ++b;
    while (e > b && punct(word[e - 1])) --e;
    if (e > b) ++n;
  }
  return n;
}

DatasetStats compute_stats(const std::vector<DrawingProcedure>& procs) {
  DatasetStats s;
  std::set<std::string> images;
  for (const auto& p : procs) {
    ++s.procedures;
    images.insert(p.image_id);
    for (const auto& step : p.steps) {
      ++s.steps;
      s.tokens += count_tokens(step.instruction);
    }
  }
  s.images = images.size();
  if (s.procedures) {
    s.steps_per_procedure = static_cast<double>(s.steps) / static_cast<double>(s.procedures);
    s.tokens_per_procedure = static_cast<double>(s.tokens) / static_cast<double>(s.procedures);
  }
  if (s.steps) s.tokens_per_step = static_cast<double>(s.tokens) / static_cast<double>(s.steps);
  return s;
}

std::string stats_to_json(const DatasetStats& s) {
  return json{{"procedures", s.procedures},
              {"images", s.images},
              {"steps", s.steps},
              {"tokens", s.tokens},
              {"steps_per_procedure", s.steps_per_procedure},
              {"tokens_per_procedure", s.tokens_per_procedure},
              {"tokens_per_step", s.tokens_per_step}}
      .dump();
}

AgreementReport verify_agreement(const DrawingProcedure& gold,
                                 const std::vector<std::vector<ActionSet>>& executions) {
  if (executions.empty()) throw EmptyInputError("no executions to compare");
  AgreementReport out;
  for (const auto& e : executions) out.executors.push_back(evaluate_procedure(gold, e, false));
  for (std::size_t i = 0; i < gold.steps.size(); ++i) {
    bool any = false;
    for (const auto& r : out.executors) any = any || r.steps[i].action_em;
    if (!any) out.flagged_steps.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

DrawingProcedure gold_corrected(const DrawingProcedure& proc) {
  DrawingProcedure out = proc;
  for (const auto& q : proc.qa_labels) {
    if (!q.corrected_actions) continue;
    if (q.step < 1 || q.step > static_cast<int>(out.steps.size()))
      throw UsageError("QA label refers to missing step " + std::to_string(q.step));
    out.steps[static_cast<std::size_t>(q.step - 1)].actions = *q.corrected_actions;
  }
  for (std::size_t i = 0; i < out.steps.size(); ++i)
    out.steps[i].board_after = apply_actions(board_before(out, i), out.steps[i].actions);
  return out;
}

}  // namespace hexagons
