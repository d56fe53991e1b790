#pragma once

// The fcnode command line. run() is the whole program minus process setup,
// so tests can drive it in-process.

#include <ostream>
#include <string>
#include <vector>

namespace fc::cli {

enum Exit : int { kOk = 0, kInvalid = 1, kUsage = 2 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fc::cli
