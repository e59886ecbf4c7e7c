#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moebius::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { success = 0, tolerance_failure = 1, usage_error = 2 };

/// Runs the command line `args` (without the program name), writing reports
/// to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moebius::cli
