#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lgsing::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kParseError = 2,
  kPreconditionViolation = 3,
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgsing::cli
