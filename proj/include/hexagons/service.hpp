#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "hexagons/dataset.hpp"
#include "hexagons/executor.hpp"
#include "hexagons/metrics.hpp"
#include "hexagons/procedure.hpp"

// Two-role drawing game: instructors describe a gallery image step by step,
// executors rebuild it blind from the instructions.
namespace hexagons::service {

enum class Category {
  simple,
  bounded_iteration,
  conditional_iteration,
  conditional_statement,
  objects,
  recursion,
  symmetry,
  other
};

std::string_view category_name(Category c);
std::optional<Category> category_from_name(std::string_view name);

struct ImageTask {
  std::string image_id;
  Board target;
  Category category = Category::other;

  friend bool operator==(const ImageTask&, const ImageTask&) = default;
};

enum class SessionStatus { open, finalized, discarded, expired };
std::string_view status_name(SessionStatus s);

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Closed session, steps out of order, or a step past the end.
class SessionStateError : public Error {
 public:
  using Error::Error;
};

// Finalizing a description whose board differs from the target. `diff`
// lists the tiles that still need to change, with their target colors.
class MismatchError : public Error {
 public:
  MismatchError(std::string what, ActionSet diff)
      : Error(std::move(what)), diff_(std::move(diff)) {}
  const ActionSet& diff() const { return diff_; }

 private:
  ActionSet diff_;
};

struct DescriptionView {
  std::string session_id;
  std::string image_id;
  SessionStatus status = SessionStatus::open;
  std::vector<DrawingStep> steps;
  Board board;  // rolling board
  std::string procedure_id;  // set once finalized
};

struct InstructionView {
  int step = 0;  // 1-based
  int total = 0;
  std::string instruction;
};

struct ExecutionAck {
  int step = 0;
  int remaining = 0;
};

struct ExecutionResult {
  std::string session_id;
  std::string procedure_id;
  ProcedureReport report;
  bool procedure_board_em = false;
  bool procedure_action_em = false;
  std::vector<ActionSet> submitted;
  Board target;  // revealed only now
};

struct MachineRoundResult {
  std::string procedure_id;
  std::string executor;
  bool complete = false;
  std::string error;  // why the round stopped early
  std::vector<ActionSet> submitted;
  // Scores over the steps that were answered; absent when none were.
  std::optional<ProcedureReport> report;
};

struct Config {
  std::filesystem::path data_dir;
  std::chrono::milliseconds session_timeout = std::chrono::hours(1);
};

// Files under data_dir: images.jsonl, procedures.jsonl, reports.jsonl and
// the append-only events.log. Existing files are loaded at construction.
class GameService {
 public:
  explicit GameService(Config config);

  const Config& config() const { return config_; }

  // Gallery. Throws UsageError on a blank board or a taken id.
  ImageTask add_image(const Board& target, Category category, std::string image_id = {});
  std::vector<ImageTask> list_images(std::optional<Category> filter = std::nullopt) const;
  ImageTask image(const std::string& image_id) const;

  // Procedures. add_procedure checks alignment and assigns an id when empty.
  std::string add_procedure(DrawingProcedure proc);
  DrawingProcedure procedure(const std::string& procedure_id) const;
  std::vector<DrawingProcedure> procedures() const;

  // Description mode.
  std::string create_description_session(const std::string& image_id);
  Board submit_description_step(const std::string& session_id, const std::string& instruction,
                                const ActionSet& actions);
  // One step per non-empty line of `text`, paired in order with `alignments`.
  Board submit_description_text(const std::string& session_id, std::string_view text,
                                const std::vector<ActionSet>& alignments);
  DrawingProcedure finalize_description(const std::string& session_id);
  void discard_description(const std::string& session_id);
  DescriptionView description(const std::string& session_id) const;

  // Execution mode. `step` must be the next step (1-based).
  std::string create_execution_session(const std::string& procedure_id,
                                       std::string executor = {});
  InstructionView next_instruction(const std::string& session_id);
  ExecutionAck submit_execution_step(const std::string& session_id, int step,
                                     const ActionSet& actions);
  ExecutionResult finalize_execution(const std::string& session_id);

  // Plays every step of a procedure against a machine executor.
  MachineRoundResult machine_executor_round(const std::string& procedure_id,
                                            executor::Client& client, bool oracle_prev_state,
                                            std::string executor_name = {});

  // Replaces one step's actions of a stored procedure, replays the boards
  // and records a QA label for the change.
  DrawingProcedure fix_procedure(const std::string& procedure_id, int step,
                                 const ActionSet& corrected, QaCategory category,
                                 std::string note = {});

  // Stored reports (one JSON object per entry), optionally for one procedure.
  std::vector<std::string> reports(const std::string& procedure_id = {}) const;

  // Marks open sessions idle past the timeout as expired. Returns how many.
  std::size_t expire_sessions();

 private:
  using Clock = std::chrono::steady_clock;

  struct Description {
    DescriptionView view;
    Clock::time_point touched;
  };
  struct Execution {
    std::string procedure_id;
    std::string executor;
    SessionStatus status = SessionStatus::open;
    int revealed = 0;
    std::vector<ActionSet> submitted;
    Clock::time_point touched;
  };

  Description& open_description(const std::string& session_id);
  Execution& open_execution(const std::string& session_id);
  bool stale(Clock::time_point touched) const;
  std::string new_session_id(char kind);
  std::string fresh_id(const std::string& prefix, const std::function<bool(const std::string&)>& taken);
  void log_event(const std::string& json_line);
  void store_report(const std::string& json_line);
  void rewrite_procedures();

  Config config_;
  mutable std::shared_mutex mu_;
  std::map<std::string, ImageTask> images_;
  std::vector<std::string> image_order_;
  std::map<std::string, DrawingProcedure> procedures_;
  std::vector<std::string> procedure_order_;
  std::vector<std::string> reports_;
  std::map<std::string, Description> descriptions_;
  std::map<std::string, Execution> executions_;
  std::uint64_t session_counter_ = 0;
};

std::string image_to_json(const ImageTask& image);
ImageTask image_from_json(std::string_view line);

}  // namespace hexagons::service
