#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fibrifier {

// Exit codes of the command-line tool.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCap = 3;

/// Parses `args` (without the program name) and runs the subcommand. Results
/// go to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibrifier
