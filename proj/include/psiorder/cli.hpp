#pragma once

#include <ostream>

namespace psiorder {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUndecided = 3;
inline constexpr int kExitExhausted = 4;

// Runs one subcommand. Results go to `out` (or to files), errors to `err` as
// a one-line JSON object {"error": ..., "kind": ...}.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psiorder
