#pragma once

#include <iosfwd>

namespace asl1::cli {

/// Exit codes: 0 converged (or target reached), 2 a limit was hit, 1 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitLimit = 2;

/// Entry point behind the `asl1` binary; subcommands `solve` and `compare`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asl1::cli
