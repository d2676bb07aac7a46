#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvx::cli {

enum ExitCode : int { Holds = 0, Violated = 1, UsageError = 2 };

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cvx::cli
