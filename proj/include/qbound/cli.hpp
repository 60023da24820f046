#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbound::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kViolation = 2,  ///< an inequality or equality was numerically falsified
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV header of the purity sweep, without trailing newline.
const char* sweep_csv_header();

}  // namespace qbound::cli
