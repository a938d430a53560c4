#pragma once

#include <stdexcept>
#include <string>

namespace schanuel {

enum class ErrorCode {
  DimensionMismatch,
  NotSquare,
  NotPrime,
  NotAdmissible,
  NotComposable,
  BadVertex,
  AlgebraMismatch,
  InvalidRepresentation,
  NotNatural,
  NotAConflation,
  GenerationBudgetExceeded,
  LiftFailed,
  SourceMismatch,
  TargetMismatch,
  BaseMismatch,
  NotARetraction,
  HypothesisViolated,
  UniquenessFailure,
  ExtensionFailed,
  NotAnIsomorphism,
  DepthInsufficient,
  ParseError,
  ValidationError,
  UnknownModule,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace schanuel
