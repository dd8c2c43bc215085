#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gabrank::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailure = 1,
    kUsage = 2,
    kBudget = 3,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gabrank::cli
