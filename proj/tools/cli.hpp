#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gridpolicy::cli {

/// Exit codes: 0 success, 1 runtime failure, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable overriding the default worker count.
inline constexpr const char* kWorkersEnv = "GRIDPOLICY_WORKERS";

/// Entry point shared by the executable and the tests. args[0] is the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridpolicy::cli
