#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cgsp::cli {

/// Process exit codes.  Stable contract.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // reproduce: a tolerance check failed; unexpected errors
  kInfeasible = 2,  // target triple cannot be realized
  kIoError = 3,
  kUsage = 4,
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cgsp::cli
