#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wreath::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecondition = 2,
  kResource = 3,
  kDisagreement = 4,
};

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`; with --json errors are also reported on `out` as
/// {"error": {...}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wreath::cli
