#pragma once

#include <iosfwd>

namespace finsler::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kNumerical = 3,
};

/// Entry point of the `finsler` tool; writes to the given streams instead of
/// the process ones so it can be driven from tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace finsler::cli
