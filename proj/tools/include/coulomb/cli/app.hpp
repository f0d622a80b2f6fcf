#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace coulomb::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kEvaluationFailure = 2,
  kValidationFailed = 3,
};

/// Bad command line, config file, or representation/context combination.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the command-line tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a flat `key = value` file; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace coulomb::cli
