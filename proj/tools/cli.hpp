#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rca::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kResourceCap = 3,
};

// args excludes the program name. color adds ANSI colors to verdicts.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace rca::cli
