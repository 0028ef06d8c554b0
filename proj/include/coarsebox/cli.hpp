#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarsebox {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitError = 1,
  kExitNoCertificate = 2,
};

/// Runs one command line (without the program name). Reports go to `--out` when
/// given, else to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarsebox
