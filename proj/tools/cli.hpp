#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eigenexpr::cli {

/// Exit statuses of the eigenexpr tool.
enum ExitStatus : int {
  kOk = 0,
  kUsageError = 1,  // bad flags or subcommand
  kDataError = 2,   // I/O, bounds, degenerate rank, malformed documents
};

/// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eigenexpr::cli
