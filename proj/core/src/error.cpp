#include "evocat/error.hpp"

namespace evocat {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PathUnresolvable: return "PathUnresolvable";
    case ErrorCode::OrdinalInMeet: return "OrdinalInMeet";
    case ErrorCode::NotASet: return "NotASet";
    case ErrorCode::MixedKinds: return "MixedKinds";
    case ErrorCode::NotBoolean: return "NotBoolean";
    case ErrorCode::NotALeaf: return "NotALeaf";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownOperation: return "UnknownOperation";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::CyclicReference: return "CyclicReference";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::InvalidInstruction: return "InvalidInstruction";
    case ErrorCode::InvalidFormula: return "InvalidFormula";
    case ErrorCode::NotATemplate: return "NotATemplate";
    case ErrorCode::MissingArgument: return "MissingArgument";
    case ErrorCode::UnknownArgument: return "UnknownArgument";
    case ErrorCode::CompareFailed: return "CompareFailed";
    case ErrorCode::EmptyHeap: return "EmptyHeap";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateSibling: return "DuplicateSibling";
    case ErrorCode::VariablesOutsideRules: return "VariablesOutsideRules";
    case ErrorCode::EndOfInput: return "EndOfInput";
    case ErrorCode::UnboundDevice: return "UnboundDevice";
    case ErrorCode::NotEncodable: return "NotEncodable";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), message_(what) {}

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace evocat
