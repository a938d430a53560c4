#include "schanuel/error.hpp"

namespace schanuel {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::BadVertex: return "BadVertex";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::InvalidRepresentation: return "InvalidRepresentation";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::NotAConflation: return "NotAConflation";
    case ErrorCode::GenerationBudgetExceeded: return "GenerationBudgetExceeded";
    case ErrorCode::LiftFailed: return "LiftFailed";
    case ErrorCode::SourceMismatch: return "SourceMismatch";
    case ErrorCode::TargetMismatch: return "TargetMismatch";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::NotARetraction: return "NotARetraction";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::UniquenessFailure: return "UniquenessFailure";
    case ErrorCode::ExtensionFailed: return "ExtensionFailed";
    case ErrorCode::NotAnIsomorphism: return "NotAnIsomorphism";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownModule: return "UnknownModule";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace schanuel
