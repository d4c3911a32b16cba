#pragma once

#include <iosfwd>

namespace rds::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_runtime = 3;

/// Parses the command line, runs the chosen subcommand, and maps failures to
/// exit codes: 2 for usage and parameter errors, 3 for runtime failures.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rds::cli
