#pragma once

#include <iosfwd>

namespace relcheck::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kEndpointFailure = 2,
  kInternalError = 3,
};

/// Entry point for the `relcheck` tool; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace relcheck::cli
