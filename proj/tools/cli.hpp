#pragma once

#include <iosfwd>

namespace qgraph::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kValidationError = 2,
  kNumericalError = 3,
  /// verify / equiv ran but a defect exceeded --tol.
  kToleranceExceeded = 4,
};

/// Runs the command line tool. Results go to `out` unless --out is given;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgraph::cli
