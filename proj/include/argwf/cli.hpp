#pragma once

#include <iosfwd>

namespace argwf {

enum ExitCode : int {
  kExitOk = 0,
  kExitFindings = 1,
  kExitInput = 2,
  kExitInfeasible = 3,
  kExitBound = 4,
};

/// Entry point of the argwf command line. Streams are injected so tests can
/// run commands in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace argwf
