#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varreg::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeError = 2, kPropertyFailure = 3 };

/// Runs the command line in-process. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varreg::cli
