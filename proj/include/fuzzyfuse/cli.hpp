#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fuzzyfuse {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

/// Entry point of the `fuzzyfuse` tool. `args` excludes the program name.
/// Returns 0 on success, 1 on data errors and 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzyfuse
