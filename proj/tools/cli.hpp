#pragma once

#include <ostream>

namespace nodehilb::cli {

/// Exit codes: 0 every check passed, 1 some check failed, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. Output is fully
/// determined by the arguments (and RUN_SCALE, which only widens bounds).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nodehilb::cli
