#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace patdens::cli {

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or the --out file); diagnostics and wall time go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patdens::cli
