#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace handtrack::app {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitDataError = 2 };

/// Entry point shared by the `handtrack` binary and the tests. args excludes
/// the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace handtrack::app
