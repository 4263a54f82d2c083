#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morasslab::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,  // game lost, validation failed, budget exhausted
  kInputError = 2,
};

/// Runs the command line `args` (without the program name). Interactive
/// players read from `in`; reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace morasslab::cli
