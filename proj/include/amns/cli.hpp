#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amns::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // verification failed, mismatch, nothing generated
  kInputError = 2,  // bad flags or values
  kParseError = 3,  // unreadable parameter file
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amns::cli
