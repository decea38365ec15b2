#pragma once

#include <iosfwd>

namespace qbasis {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitIo = 3, kExitNumerical = 4 };

/// Entry point of the qbasis command line; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qbasis
