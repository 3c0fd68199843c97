#include "hexagons/procedure.hpp"

#include <array>

namespace hexagons {

namespace {

constexpr std::array<std::string_view, 2> kRoleNames{"instructor", "executor"};
constexpr std::array<std::string_view, 5> kQaNames{
    "over_execution", "under_execution", "miscounting", "error_propagation", "other"};

const Board kBlank{};

}  // namespace

std::string_view role_name(AuthorRole r) { return kRoleNames[static_cast<std::size_t>(r)]; }

std::optional<AuthorRole> role_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i)
    if (kRoleNames[i] == name) return static_cast<AuthorRole>(i);
  return std::nullopt;
}

std::string_view qa_category_name(QaCategory c) { return kQaNames[static_cast<std::size_t>(c)]; }

std::optional<QaCategory> qa_category_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kQaNames.size(); ++i)
    if (kQaNames[i] == name) return static_cast<QaCategory>(i);
  return std::nullopt;
}

const Board& board_before(const DrawingProcedure& proc, std::size_t i) {
  return i == 0 ? kBlank : proc.steps.at(i - 1).board_after;
}

void append_step(DrawingProcedure& proc, std::string instruction, ActionSet actions) {
  const Board& prev = board_before(proc, proc.steps.size());
  DrawingStep step;
  step.index = static_cast<int>(proc.steps.size()) + 1;
  step.instruction = std::move(instruction);
  step.board_after = apply_actions(prev, actions);
  step.actions = std::move(actions);
  proc.steps.push_back(std::move(step));
}

void check_alignment(const DrawingProcedure& proc) {
  for (std::size_t i = 0; i < proc.steps.size(); ++i) {
    const auto& s = proc.steps[i];
    const int expected = static_cast<int>(i) + 1;
    if (s.index != expected)
      throw AlignmentError("procedure " + proc.id + ": step index " + std::to_string(s.index) +
                               " where " + std::to_string(expected) + " was expected",
                           expected);
    if (apply_actions(board_before(proc, i), s.actions) != s.board_after)
      throw AlignmentError("procedure " + proc.id + ": step " + std::to_string(expected) +
                               " board does not match its actions",
                           expected);
  }
}

}  // namespace hexagons
