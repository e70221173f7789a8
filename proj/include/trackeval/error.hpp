#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trackeval {

enum class ErrorCode {
  NonConvex,
  Degenerate,
  DomainError,
  EmptySequence,
  ThresholdNotSampled,
  ParseError,
  MissingFile,
  GroundTruthFailureLine,
  LengthMismatch,
  SchemaError,
  UnknownMetric,
  UnknownSequence,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::ThresholdNotSampled: return "ThresholdNotSampled";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::GroundTruthFailureLine: return "GroundTruthFailureLine";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownMetric: return "UnknownMetric";
    case ErrorCode::UnknownSequence: return "UnknownSequence";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above; the
// message is prefixed with the code name so command-line output names it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trackeval
