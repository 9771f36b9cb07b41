#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kinescope::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kGeometry = 3,
    kInsufficient = 4,
};

/// Runs the command line (without the program name). Output that the
/// commands print goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kinescope::cli
