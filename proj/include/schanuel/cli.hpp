#pragma once

// The schanuel-lab command line: check, resolve, idim, schanuel, prop.

#include <ostream>

namespace schanuel {

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,  // a check failed, or an internal error
  kExitHypothesis = 2,
  kExitInconclusive = 3,
  kExitUsage = 4,  // parse, validation and usage errors
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schanuel
