#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace norlund::cli {

enum ExitCode : int {
  kPass = 0,
  kFailed = 1,  // tolerance failure or internal error
  kUsage = 2,   // parse failure, bad flag, unknown id
  kDomain = 3,  // parameters outside the domain or ill-conditioned
};

/// Runs the command line `args` (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace norlund::cli
