#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pforest {

enum class ErrorCode {
  MalformedLine,
  VertexOutOfRange,
  DuplicateArc,
  SelfLoop,
  CountMismatch,
  InvalidForest,
  InvalidMatching,
  ArcNotInDigraph,
  NotReachable,
  OddOrder,
  NotPerfectMatching,
  NotWeakPerfect,
  NotAlmostPerfect,
  NotPerfect,
  ContractViolation,
  WrongClass,
  InvalidInstance,
  TooFewTriples,
  NotAPerfectMatching,
  StructureMismatch,
  BudgetExceeded,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::InvalidForest: return "InvalidForest";
    case ErrorCode::InvalidMatching: return "InvalidMatching";
    case ErrorCode::ArcNotInDigraph: return "ArcNotInDigraph";
    case ErrorCode::NotReachable: return "NotReachable";
    case ErrorCode::OddOrder: return "OddOrder";
    case ErrorCode::NotPerfectMatching: return "NotPerfectMatching";
    case ErrorCode::NotWeakPerfect: return "NotWeakPerfect";
    case ErrorCode::NotAlmostPerfect: return "NotAlmostPerfect";
    case ErrorCode::NotPerfect: return "NotPerfect";
    case ErrorCode::ContractViolation: return "ContractViolation";
    case ErrorCode::WrongClass: return "WrongClass";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::TooFewTriples: return "TooFewTriples";
    case ErrorCode::NotAPerfectMatching: return "NotAPerfectMatching";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the text readers; `line()` is 1-based and counts comment lines.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pforest
