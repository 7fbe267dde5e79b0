#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dctfuse::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kBadArguments = 2,
    kIoError = 3,
    kDimensionError = 4,
};

/// Runs one invocation (`args[0]` is the subcommand, not the program name).
/// Results go to `out`, diagnostics to `err`; every failure writes exactly
/// one line starting with "error:".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dctfuse::cli
