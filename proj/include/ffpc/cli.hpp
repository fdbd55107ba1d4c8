#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ffpc {

/// Exit codes of the ffpc tool.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitBudget = 3 };

/// Runs the command line (args exclude the program name). Reports go to `out`
/// (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffpc
