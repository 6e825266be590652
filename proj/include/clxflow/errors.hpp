#pragma once

#include <stdexcept>
#include <string>

namespace clxflow {

enum class ErrorCode {
  kDuplicateEdge,
  kSelfLoop,
  kPhaseOutOfRange,
  kIndexOutOfBounds,
  kConvergenceFailure,
  kRankAmbiguous,
  kDTooSmall,
  kCorankNotOne,
  kDefectiveSpectrum,
  kNotAnEigenvector,
  kIndeterminateRatio,
  kOverflow,
  kEmptyGrid,
  kDivergentFlow,
  kZeroEigenvalueInJReduced,
  kDuplicateTargets,
  kDimensionMismatch,
  kZeroDegreeNode,
  kNoGloballyReachableNode,
  kParseError,
  kNegativeCount,
  kInvalidArgument,
};

const char* to_string(ErrorCode code);

/// Errors caused by malformed input (CLI exit code 2) as opposed to
/// analysis failures on well-formed input (exit code 1).
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clxflow
