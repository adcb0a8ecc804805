#pragma once

#include <string>
#include <vector>

namespace sdq {

// Exit codes: 0 success, 1 runtime/numerical failure, 2 unknown flag or bad
// command line, 3 malformed config, 4 filesystem failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitFilesystem = 4;

int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args without argv[0]

}  // namespace sdq
