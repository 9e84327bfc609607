#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wfdrift::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNumerical = 2,
  kIo = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Subcommands: solve, compare, viscosity, oracle.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wfdrift::cli
