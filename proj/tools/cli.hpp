#pragma once

#include <iosfwd>

namespace hallgh::cli {

/// Exit codes of the hallgh command.
enum Exit : int {
  kPass = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kNumerical = 3,
};

/// Runs the command line; `out` receives machine-readable results and `err`
/// human summaries and diagnostics.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hallgh::cli
