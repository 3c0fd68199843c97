#include "hexagons/service.hpp"

#include <array>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "json_io.hpp"

namespace hexagons::service {

using jsonio::json;

namespace {

constexpr std::array<std::string_view, 8> kCategoryNames{
    "simple",  "bounded_iteration", "conditional_iteration", "conditional_statement",
    "objects", "recursion",         "symmetry",              "other"};

constexpr std::array<std::string_view, 4> kStatusNames{"open", "finalized", "discarded",
                                                       "expired"};

std::int64_t wall_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void append_line(const std::filesystem::path& path, const std::string& line) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out << line << '\n';
  if (!out) throw Error("cannot append to " + path.string());
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::vector<std::string> out;
  std::ifstream in(path, std::ios::binary);
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) out.push_back(line);
    start = end + 1;
  }
  return out;
}

json actions_list(const std::vector<ActionSet>& steps) {
  json out = json::array();
  for (const auto& s : steps) out.push_back(jsonio::actions_to_json(s));
  return out;
}

}  // namespace

std::string_view category_name(Category c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<Category> category_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i)
    if (kCategoryNames[i] == name) return static_cast<Category>(i);
  return std::nullopt;
}

std::string_view status_name(SessionStatus s) { return kStatusNames[static_cast<std::size_t>(s)]; }

std::string image_to_json(const ImageTask& image) {
  return json{{"image_id", image.image_id},
              {"category", std::string(category_name(image.category))},
              {"target_board", jsonio::board_to_json(image.target)}}
      .dump();
}

ImageTask image_from_json(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw UsageError("malformed image record");
  ImageTask t;
  try {
    t.image_id = jsonio::require_string(j, "image_id");
    const std::string cat = jsonio::require_string(j, "category");
    auto c = category_from_name(cat);
    if (!c) throw UsageError("unknown category \"" + cat + "\"");
    t.category = *c;
    t.target = jsonio::board_from_json(jsonio::require(j, "target_board"));
  } catch (const jsonio::ShapeError& e) {
    throw UsageError(std::string("bad image record: ") + e.what());
  }
  return t;
}

GameService::GameService(Config config) : config_(std::move(config)) {
  if (config_.data_dir.empty()) throw UsageError("data directory not set");
  std::filesystem::create_directories(config_.data_dir);
  for (const auto& line : read_lines(config_.data_dir / "images.jsonl")) {
    ImageTask t = image_from_json(line);
    if (images_.emplace(t.image_id, t).second) image_order_.push_back(t.image_id);
  }
  const auto proc_path = config_.data_dir / "procedures.jsonl";
  if (std::filesystem::exists(proc_path))
    for (auto& p : load_procedures(proc_path)) {
      procedure_order_.push_back(p.id);
      procedures_.emplace(p.id, std::move(p));
    }
  reports_ = read_lines(config_.data_dir / "reports.jsonl");
}

bool GameService::stale(Clock::time_point touched) const {
  return Clock::now() - touched > config_.session_timeout;
}

std::string GameService::new_session_id(char kind) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << kind << '-' << ++session_counter_ << '-' << std::hex << (rng() & 0xffffffffffULL);
  return out.str();
}

std::string GameService::fresh_id(const std::string& prefix,
                                  const std::function<bool(const std::string&)>& taken) {
  for (std::size_t n = 1;; ++n) {
    std::string id = prefix + std::to_string(n);
    if (!taken(id)) return id;
  }
}

void GameService::log_event(const std::string& json_line) {
  append_line(config_.data_dir / "events.log", json_line);
}

void GameService::store_report(const std::string& json_line) {
  append_line(config_.data_dir / "reports.jsonl", json_line);
  reports_.push_back(json_line);
}

void GameService::rewrite_procedures() {
  std::vector<DrawingProcedure> all;
  for (const auto& id : procedure_order_) all.push_back(procedures_.at(id));
  const auto path = config_.data_dir / "procedures.jsonl";
  const auto tmp = config_.data_dir / "procedures.jsonl.tmp";
  save_procedures(all, tmp);
  std::filesystem::rename(tmp, path);
}

ImageTask GameService::add_image(const Board& target, Category category, std::string image_id) {
  if (painted(target).empty()) throw UsageError("target image is blank");
  std::unique_lock lock(mu_);
  if (image_id.empty())
    image_id = fresh_id("img-", [this](const std::string& id) { return images_.count(id) > 0; });
  else if (images_.count(image_id))
    throw UsageError("image " + image_id + " already exists");
  ImageTask t{image_id, target, category};
  append_line(config_.data_dir / "images.jsonl", image_to_json(t));
  images_.emplace(image_id, t);
  image_order_.push_back(image_id);
  log_event(json{{"time_ms", wall_ms()}, {"event", "image.added"}, {"image_id", image_id}}.dump());
  return t;
}

std::vector<ImageTask> GameService::list_images(std::optional<Category> filter) const {
  std::shared_lock lock(mu_);
  std::vector<ImageTask> out;
  for (const auto& id : image_order_) {
    const auto& t = images_.at(id);
    if (!filter || t.category == *filter) out.push_back(t);
  }
  return out;
}

ImageTask GameService::image(const std::string& image_id) const {
  std::shared_lock lock(mu_);
  auto it = images_.find(image_id);
  if (it == images_.end()) throw NotFoundError("unknown image " + image_id);
  return it->second;
}

std::string GameService::add_procedure(DrawingProcedure proc) {
  if (proc.steps.empty()) throw UsageError("procedure has no steps");
  check_alignment(proc);
  std::unique_lock lock(mu_);
  if (proc.id.empty())
    proc.id = fresh_id("proc-", [this](const std::string& id) { return procedures_.count(id) > 0; });
  else if (procedures_.count(proc.id))
    throw UsageError("procedure " + proc.id + " already exists");
  append_line(config_.data_dir / "procedures.jsonl", procedure_to_json(proc));
  const std::string id = proc.id;
  procedure_order_.push_back(id);
  procedures_.emplace(id, std::move(proc));
  log_event(json{{"time_ms", wall_ms()}, {"event", "procedure.added"}, {"procedure_id", id}}.dump());
  return id;
}

DrawingProcedure GameService::procedure(const std::string& procedure_id) const {
  std::shared_lock lock(mu_);
  auto it = procedures_.find(procedure_id);
  if (it == procedures_.end()) throw NotFoundError("unknown procedure " + procedure_id);
  return it->second;
}

std::vector<DrawingProcedure> GameService::procedures() const {
  std::shared_lock lock(mu_);
  std::vector<DrawingProcedure> out;
  for (const auto& id : procedure_order_) out.push_back(procedures_.at(id));
  return out;
}

GameService::Description& GameService::open_description(const std::string& session_id) {
  auto it = descriptions_.find(session_id);
  if (it == descriptions_.end()) throw NotFoundError("unknown description session " + session_id);
  Description& d = it->second;
  if (d.view.status == SessionStatus::open && stale(d.touched))
    d.view.status = SessionStatus::expired;
  if (d.view.status != SessionStatus::open)
    throw SessionStateError("description session " + session_id + " is " +
                            std::string(status_name(d.view.status)));
  d.touched = Clock::now();
  return d;
}

GameService::Execution& GameService::open_execution(const std::string& session_id) {
  auto it = executions_.find(session_id);
  if (it == executions_.end()) throw NotFoundError("unknown execution session " + session_id);
  Execution& e = it->second;
  if (e.status == SessionStatus::open && stale(e.touched)) e.status = SessionStatus::expired;
  if (e.status != SessionStatus::open)
    throw SessionStateError("execution session " + session_id + " is " +
                            std::string(status_name(e.status)));
  e.touched = Clock::now();
  return e;
}

std::string GameService::create_description_session(const std::string& image_id) {
  std::unique_lock lock(mu_);
  if (!images_.count(image_id)) throw NotFoundError("unknown image " + image_id);
  const std::string sid = new_session_id('d');
  Description d;
  d.view.session_id = sid;
  d.view.image_id = image_id;
  d.touched = Clock::now();
  descriptions_.emplace(sid, std::move(d));
  log_event(json{{"time_ms", wall_ms()},
                 {"event", "description.created"},
                 {"session", sid},
                 {"image_id", image_id}}
                .dump());
  return sid;
}

Board GameService::submit_description_step(const std::string& session_id,
                                           const std::string& instruction,
                                           const ActionSet& actions) {
  if (instruction.find('\n') != std::string::npos)
    throw UsageError("one instruction per step; split multi-line text into steps");
  std::unique_lock lock(mu_);
  Description& d = open_description(session_id);
  DrawingStep step;
  step.index = static_cast<int>(d.view.steps.size()) + 1;
  step.instruction = instruction;
  step.actions = actions;
  step.board_after = apply_actions(d.view.board, actions);
  d.view.board = step.board_after;
  d.view.steps.push_back(step);
  log_event(json{{"time_ms", wall_ms()},
                 {"event", "description.step"},
                 {"session", session_id},
                 {"step", step.index},
                 {"instruction", instruction},
                 {"actions", jsonio::actions_to_json(actions)}}
                .dump());
  return d.view.board;
}

Board GameService::submit_description_text(const std::string& session_id, std::string_view text,
                                           const std::vector<ActionSet>& alignments) {
  const auto lines = split_lines(text);
  if (lines.size() != alignments.size())
    throw UsageError(std::to_string(lines.size()) + " instruction lines but " +
                     std::to_string(alignments.size()) + " alignments");
  {
    // Fail before any step is appended.
    std::shared_lock lock(mu_);
    auto it = descriptions_.find(session_id);
    if (it == descriptions_.end()) throw NotFoundError("unknown description session " + session_id);
  }
  Board board;
  for (std::size_t i = 0; i < lines.size(); ++i)
    board = submit_description_step(session_id, lines[i], alignments[i]);
  if (lines.empty()) board = description(session_id).board;
  return board;
}

DrawingProcedure GameService::finalize_description(const std::string& session_id) {
  std::unique_lock lock(mu_);
  Description& d = open_description(session_id);
  if (d.view.steps.empty()) throw SessionStateError("no steps to finalize");
  const Board& target = images_.at(d.view.image_id).target;
  if (d.view.board != target) {
    ActionSet missing = diff(d.view.board, target);
    throw MismatchError("board differs from the target on " + std::to_string(missing.size()) +
                            " tiles",
                        std::move(missing));
  }
  DrawingProcedure proc;
  proc.id = fresh_id("proc-", [this](const std::string& id) { return procedures_.count(id) > 0; });
  proc.image_id = d.view.image_id;
  proc.author_role = AuthorRole::instructor;
  proc.steps = d.view.steps;
  check_alignment(proc);
  append_line(config_.data_dir / "procedures.jsonl", procedure_to_json(proc));
  procedure_order_.push_back(proc.id);
  procedures_.emplace(proc.id, proc);
  d.view.status = SessionStatus::finalized;
  d.view.procedure_id = proc.id;
  log_event(json{{"time_ms", wall_ms()},
                 {"event", "description.finalized"},
                 {"session", session_id},
                 {"procedure_id", proc.id}}
                .dump());
  return proc;
}

void GameService::discard_description(const std::string& session_id) {
  std::unique_lock lock(mu_);
  Description& d = open_description(session_id);
  d.view.status = SessionStatus::discarded;
  log_event(json{{"time_ms", wall_ms()}, {"event", "description.discarded"}, {"session", session_id}}
                .dump());
}

DescriptionView GameService::description(const std::string& session_id) const {
  std::shared_lock lock(mu_);
  auto it = descriptions_.find(session_id);
  if (it == descriptions_.end()) throw NotFoundError("unknown description session " + session_id);
  DescriptionView v = it->second.view;
  if (v.status == SessionStatus::open && stale(it->second.touched)) v.status = SessionStatus::expired;
  return v;
}

std::string GameService::create_execution_session(const std::string& procedure_id,
                                                  std::string executor) {
  std::unique_lock lock(mu_);
  if (!procedures_.count(procedure_id)) throw NotFoundError("unknown procedure " + procedure_id);
  const std::string sid = new_session_id('e');
  Execution e;
  e.procedure_id = procedure_id;
  e.executor = std::move(executor);
  e.touched = Clock::now();
  executions_.emplace(sid, std::move(e));
  log_event(json{{"time_ms", wall_ms()},
                 {"event", "execution.created"},
                 {"session", sid},
                 {"procedure_id", procedure_id}}
                .dump());
  return sid;
}

InstructionView GameService::next_instruction(const std::string& session_id) {
  std::unique_lock lock(mu_);
  Execution& e = open_execution(session_id);
  const auto& proc = procedures_.at(e.procedure_id);
  const int total = static_cast<int>(proc.steps.size());
  const int next = static_cast<int>(e.submitted.size()) + 1;
  if (next > total) throw SessionStateError("all steps have been submitted");
  e.revealed = std::max(e.revealed, next);
  return {next, total, proc.steps[static_cast<std::size_t>(next - 1)].instruction};
}

ExecutionAck GameService::submit_execution_step(const std::string& session_id, int step,
                                                const ActionSet& actions) {
  std::unique_lock lock(mu_);
  Execution& e = open_execution(session_id);
  const int total = static_cast<int>(procedures_.at(e.procedure_id).steps.size());
  const int expected = static_cast<int>(e.submitted.size()) + 1;
  if (expected > total) throw SessionStateError("step " + std::to_string(step) + " is past the last step");
  if (step != expected)
    throw SessionStateError("step " + std::to_string(step) + " submitted, step " +
                            std::to_string(expected) + " expected");
  if (e.revealed < step)
    throw SessionStateError("instruction for step " + std::to_string(step) + " not yet revealed");
  e.submitted.push_back(actions);
  log_event(json{{"time_ms", wall_ms()},
                 {"event", "execution.step"},
                 {"session", session_id},
                 {"step", step},
                 {"actions", jsonio::actions_to_json(actions)}}
                .dump());
  return {step, total - step};
}

ExecutionResult GameService::finalize_execution(const std::string& session_id) {
  std::unique_lock lock(mu_);
  Execution& e = open_execution(session_id);
  const DrawingProcedure& gold = procedures_.at(e.procedure_id);
  if (e.submitted.size() != gold.steps.size())
    throw SessionStateError(std::to_string(gold.steps.size() - e.submitted.size()) +
                            " steps still to submit");
  ExecutionResult r;
  r.session_id = session_id;
  r.procedure_id = e.procedure_id;
  r.report = evaluate_procedure(gold, e.submitted, false);
  r.procedure_board_em = r.report.all_em(Mode::board);
  r.procedure_action_em = r.report.all_em(Mode::action);
  r.submitted = e.submitted;
  r.target = gold.steps.back().board_after;
  e.status = SessionStatus::finalized;
  store_report(json{{"kind", "human"},
                    {"session", session_id},
                    {"procedure_id", r.procedure_id},
                    {"executor", e.executor},
                    {"complete", true},
                    {"oracle_prev", false},
                    {"submitted", actions_list(r.submitted)},
                    {"report", jsonio::report_to_json(r.report)}}
                   .dump());
  log_event(json{{"time_ms", wall_ms()}, {"event", "execution.finalized"}, {"session", session_id}}
                .dump());
  return r;
}

MachineRoundResult GameService::machine_executor_round(const std::string& procedure_id,
                                                       executor::Client& client,
                                                       bool oracle_prev_state,
                                                       std::string executor_name) {
  const DrawingProcedure gold = procedure(procedure_id);
  MachineRoundResult r;
  r.procedure_id = procedure_id;
  r.executor = std::move(executor_name);
  Board rolling;
  for (std::size_t i = 0; i < gold.steps.size(); ++i) {
    executor::Request req;
    req.board = oracle_prev_state ? board_before(gold, i) : rolling;
    req.instruction = gold.steps[i].instruction;
    if (i > 0) req.prev_instruction = gold.steps[i - 1].instruction;
    req.procedure_id = procedure_id;
    req.step = static_cast<int>(i) + 1;
    try {
      executor::Response resp = client.execute(req);
      rolling = apply_actions(req.board, resp.actions);
      r.submitted.push_back(std::move(resp.actions));
    } catch (const std::exception& ex) {
      r.error = "step " + std::to_string(i + 1) + ": " + ex.what();
      break;
    }
  }
  r.complete = r.submitted.size() == gold.steps.size();
  if (!r.submitted.empty()) {
    DrawingProcedure answered = gold;
    answered.steps.resize(r.submitted.size());
    r.report = evaluate_procedure(answered, r.submitted, oracle_prev_state);
  }
  std::unique_lock lock(mu_);
  store_report(json{{"kind", "machine"},
                    {"procedure_id", procedure_id},
                    {"executor", r.executor},
                    {"complete", r.complete},
                    {"error", r.error},
                    {"oracle_prev", oracle_prev_state},
                    {"submitted", actions_list(r.submitted)},
                    {"report", r.report ? jsonio::report_to_json(*r.report) : json(nullptr)}}
                   .dump());
  return r;
}

DrawingProcedure GameService::fix_procedure(const std::string& procedure_id, int step,
                                            const ActionSet& corrected, QaCategory category,
                                            std::string note) {
  std::unique_lock lock(mu_);
  auto it = procedures_.find(procedure_id);
  if (it == procedures_.end()) throw NotFoundError("unknown procedure " + procedure_id);
  DrawingProcedure updated = it->second;
  if (step < 1 || step > static_cast<int>(updated.steps.size()))
    throw UsageError("procedure " + procedure_id + " has no step " + std::to_string(step));
  updated.qa_labels.push_back({step, category, corrected, std::move(note)});
  updated = gold_corrected(updated);
  check_alignment(updated);
  it->second = updated;
  rewrite_procedures();
  log_event(json{{"time_ms", wall_ms()},
                 {"event", "procedure.fixed"},
                 {"procedure_id", procedure_id},
                 {"step", step},
                 {"category", std::string(qa_category_name(category))}}
                .dump());
  return updated;
}

std::vector<std::string> GameService::reports(const std::string& procedure_id) const {
  std::shared_lock lock(mu_);
  if (procedure_id.empty()) return reports_;
  std::vector<std::string> out;
  for (const auto& line : reports_) {
    json j = json::parse(line, nullptr, false);
    if (!j.is_discarded() && j.value("procedure_id", "") == procedure_id) out.push_back(line);
  }
  return out;
}

std::size_t GameService::expire_sessions() {
  std::unique_lock lock(mu_);
  std::size_t n = 0;
  for (auto& [_, d] : descriptions_)
    if (d.view.status == SessionStatus::open && stale(d.touched)) {
      d.view.status = SessionStatus::expired;
      ++n;
    }
  for (auto& [_, e] : executions_)
    if (e.status == SessionStatus::open && stale(e.touched)) {
      e.status = SessionStatus::expired;
      ++n;
    }
  return n;
}

}  // namespace hexagons::service
