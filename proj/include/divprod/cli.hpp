#pragma once

#include <iosfwd>

namespace divprod::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidArgument = 2,
  kResourceLimit = 3,
  kPreconditionFailure = 4,
  kInternalError = 5,
};

// Parses argv and runs one subcommand. Results go to `out` (or the --out
// file); failures are reported on `err` as one line of JSON.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace divprod::cli
