#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wigmaj::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitDomain = 2,
  kExitUsage = 64,
};

// Runs the command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wigmaj::cli
