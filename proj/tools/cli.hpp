#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace causality::cli {

enum ExitCode : int {
  Ok = 0,
  Failure = 1,
  ParseFailure = 2,
  Dangling = 3,
  BadIndex = 4,
  NotGood = 5,
  CapExceeded = 6,
};

/// Runs one command line (without the program name). The artifact goes to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causality::cli
