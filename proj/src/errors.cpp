#include "clxflow/errors.hpp"

namespace clxflow {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kPhaseOutOfRange: return "PhaseOutOfRange";
    case ErrorCode::kIndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kRankAmbiguous: return "RankAmbiguous";
    case ErrorCode::kDTooSmall: return "DTooSmall";
    case ErrorCode::kCorankNotOne: return "CorankNotOne";
    case ErrorCode::kDefectiveSpectrum: return "DefectiveSpectrum";
    case ErrorCode::kNotAnEigenvector: return "NotAnEigenvector";
    case ErrorCode::kIndeterminateRatio: return "IndeterminateRatio";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kDivergentFlow: return "DivergentFlow";
    case ErrorCode::kZeroEigenvalueInJReduced: return "ZeroEigenvalueInJReduced";
    case ErrorCode::kDuplicateTargets: return "DuplicateTargets";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroDegreeNode: return "ZeroDegreeNode";
    case ErrorCode::kNoGloballyReachableNode: return "NoGloballyReachableNode";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNegativeCount: return "NegativeCount";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEdge:
    case ErrorCode::kSelfLoop:
    case ErrorCode::kPhaseOutOfRange:
    case ErrorCode::kIndexOutOfBounds:
    case ErrorCode::kParseError:
    case ErrorCode::kNegativeCount:
    case ErrorCode::kInvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace clxflow
