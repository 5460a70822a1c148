#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxmin::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kDomain = 2,
  kConvergence = 3,
  kIo = 4,
};

/// Parses `args` (without the program name), runs one subcommand and writes
/// its JSON or CSV to `out`. Diagnostics go to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxmin::cli
