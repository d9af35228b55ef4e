#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace greenkernel::cli {

enum ExitCode : int { kSuccess = 0, kToleranceFailure = 1, kInputError = 2 };

/// Runs one command. `args` excludes the program name. CSV goes to `out` (or
/// --output); the JSON diagnostics block goes to --diagnostics when given,
/// otherwise to `err` for commands that also print CSV and to `out` for the rest.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace greenkernel::cli
