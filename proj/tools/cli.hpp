#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpsm::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kDegenerate = 3,
    kInternal = 4,
};

/// Entry point of the `dpsm` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpsm::cli
