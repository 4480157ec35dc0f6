#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blochkit {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitSuiteFailure = 3 };

/// Runs one `blochkit` command. `args` excludes the program name. The report
/// goes to `out` (or the --out file), diagnostics and usage text to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blochkit
