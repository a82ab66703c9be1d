#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hqc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Runs the command line `args` (without the program name). Results go to
// `out` (or the --out file), diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hqc::cli
