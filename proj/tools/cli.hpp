#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chromatic::cli {

/// Exit codes of the command-line tool.
enum Exit : int {
  kOk = 0,
  kNegative = 1,  // task unsolvable, or an --expect check failed
  kUsage = 2,
  kInput = 3,     // unreadable or invalid input file, unwritable output
};

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chromatic::cli
