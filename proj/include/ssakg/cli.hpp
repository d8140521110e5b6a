#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ssakg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

// Parses `args` (without the program name) and runs one subcommand. Results go
// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssakg::cli
