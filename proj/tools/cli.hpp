#pragma once

#include <iosfwd>

namespace zeldovich::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNonConvergence = 3,
  kValidationFailed = 4,
};

/// Parses argv and runs one subcommand. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zeldovich::cli
