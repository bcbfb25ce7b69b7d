#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ensys::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kBudget = 2, kVerifyFail = 3 };

// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ensys::cli
