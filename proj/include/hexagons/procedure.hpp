#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexagons/board.hpp"

namespace hexagons {

struct DrawingStep {
  int index = 1;
  std::string instruction;
  ActionSet actions;
  Board board_after;

  friend bool operator==(const DrawingStep&, const DrawingStep&) = default;
};

enum class AuthorRole { instructor, executor };

std::string_view role_name(AuthorRole r);
std::optional<AuthorRole> role_from_name(std::string_view name);

enum class QaCategory { over_execution, under_execution, miscounting, error_propagation, other };

std::string_view qa_category_name(QaCategory c);
std::optional<QaCategory> qa_category_from_name(std::string_view name);

struct QaLabel {
  int step = 1;  // index of the labelled step
  QaCategory category = QaCategory::other;
  std::optional<ActionSet> corrected_actions;
  std::string note;

  friend bool operator==(const QaLabel&, const QaLabel&) = default;
};

struct DrawingProcedure {
  std::string id;
  std::string image_id;
  AuthorRole author_role = AuthorRole::instructor;
  std::vector<DrawingStep> steps;
  std::vector<QaLabel> qa_labels;

  friend bool operator==(const DrawingProcedure&, const DrawingProcedure&) = default;
};

// Board before step `i` (0-based): blank for the first step.
const Board& board_before(const DrawingProcedure& proc, std::size_t i);

// Appends a step whose board is the replay of `actions` on the last board.
void append_step(DrawingProcedure& proc, std::string instruction, ActionSet actions);

// Throws AlignmentError naming the first step whose index is out of sequence
// or whose board_after differs from the replay of its actions.
void check_alignment(const DrawingProcedure& proc);

}  // namespace hexagons
