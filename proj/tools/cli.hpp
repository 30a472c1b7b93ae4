#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace salem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` unless --output is given; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace salem::cli
