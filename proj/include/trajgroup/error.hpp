#pragma once

#include <stdexcept>
#include <string>

namespace trajgroup {

enum class ErrorCode {
  NonMonotonicTime,
  RaggedTrajectory,
  NonFiniteCoordinate,
  EmptyDataset,
  TimeOutOfRange,
  InvalidParameter,
  DuplicateEdge,
  MissingEdge,
  PartitionMismatch,
  OverlappingLeaves,
  TooManyEntities,
  ParseError,
  DuplicateSample,
  EmptyCommonWindow,
  EntityOutsideWindow,
  UnknownQuery,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::RaggedTrajectory: return "RaggedTrajectory";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::OverlappingLeaves: return "OverlappingLeaves";
    case ErrorCode::TooManyEntities: return "TooManyEntities";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateSample: return "DuplicateSample";
    case ErrorCode::EmptyCommonWindow: return "EmptyCommonWindow";
    case ErrorCode::EntityOutsideWindow: return "EntityOutsideWindow";
    case ErrorCode::UnknownQuery: return "UnknownQuery";
  }
  return "Unknown";
}

/// Bad input or arguments. Carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An internal structural invariant was found broken (a bug, not bad input).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace trajgroup
