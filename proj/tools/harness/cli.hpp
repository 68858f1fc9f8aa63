#pragma once

#include <iosfwd>

namespace riesz::harness {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
};

/// Runs the `riesz` command line: check-iso, pressure, mms.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace riesz::harness
