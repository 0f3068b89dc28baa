#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adjforge {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitError = 2 };

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace adjforge
