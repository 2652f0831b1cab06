#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace betacert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParry = 10;
inline constexpr int kExitInconclusive = 20;
inline constexpr int kExitUsage = 64;

/// Runs one command. `args` excludes the program name. The payload goes to
/// `out` (or to the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace betacert::cli
