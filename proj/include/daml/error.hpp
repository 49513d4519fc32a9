#pragma once

#include <stdexcept>
#include <string>

namespace daml {

enum class ErrorKind {
  UnknownAgent,
  UnknownWorld,
  UnknownEvent,
  UnknownProductWorld,
  UnknownReference,
  SyntaxError,
  OughtInPrecondition,
  OwnerMismatch,
  CyclicPrecondition,
  ValidationError,
  ParseError,
  EmptyProduct,
  IsolatedRoot,
  NoSuccessors,
  NoDecisionContext,
  TraceLeak,
  Overflow,
  NonTermination,
  Unsatisfiable,
  UsageError,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (CLI exit
// codes, the axiom harness) can classify it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Internal consistency failures, as opposed to bad input.
  bool is_internal() const noexcept {
    return kind_ == ErrorKind::TraceLeak || kind_ == ErrorKind::NonTermination;
  }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorKind::SyntaxError, "at " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class EmptyProductError : public Error {
 public:
  EmptyProductError(const std::string& what, int step = -1)
      : Error(ErrorKind::EmptyProduct, what), step_(step) {}

  // Index of the failing update in a sequence, -1 for a single product.
  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace daml
