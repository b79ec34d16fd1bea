#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace electorate {

enum class ErrorCode {
  NonPositiveElectors,
  EmptyDistribution,
  ProbabilityOutOfRange,
  NotNormalized,
  DimensionMismatch,
  InvalidArguments,
  EnumerationTooLarge,
  IndexOutOfRange,
  CountOutOfRange,
  DegenerateDistribution,
  TooFewTrials,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveElectors: return "NonPositiveElectors";
    case ErrorCode::EmptyDistribution: return "EmptyDistribution";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArguments: return "InvalidArguments";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CountOutOfRange: return "CountOutOfRange";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::TooFewTrials: return "TooFewTrials";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace electorate
