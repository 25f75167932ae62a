#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evocat {

enum class ErrorCode {
  // tree-core
  PathUnresolvable,
  OrdinalInMeet,
  NotASet,
  // term algebra
  MixedKinds,
  NotBoolean,
  NotALeaf,
  DivisionByZero,
  ArityMismatch,
  // evaluator
  UnknownOperation,
  FuelExhausted,
  CyclicReference,
  // rewriting and sequential execution
  UnboundVariable,
  InvalidInstruction,
  InvalidFormula,
  // templates and appliances
  NotATemplate,
  MissingArgument,
  UnknownArgument,
  CompareFailed,
  EmptyHeap,
  // text format
  SyntaxError,
  DuplicateSibling,
  VariablesOutsideRules,
  // devices
  EndOfInput,
  UnboundDevice,
  NotEncodable,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  // The text after the "Code: " prefix of what().
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

// Errors raised by the parser carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace evocat
