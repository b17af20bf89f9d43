#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsekit {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point of the `sparsekit` tool. `args` excludes the program name.
/// Subcommands: noiseless, noisy, coherence, bounds.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sparsekit
