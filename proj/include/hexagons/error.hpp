#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hexagons {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

// Two actions in one step address the same tile.
class InvalidActionSetError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// A step's recorded board does not match the replay of its actions.
class AlignmentError : public Error {
 public:
  AlignmentError(std::string what, int step)
      : Error(std::move(what)), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

}  // namespace hexagons
