#pragma once

#include <iosfwd>

namespace orthohaar {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Entry point of the `orthohaar` tool (subcommands: sample, verify, bench).
/// Output that would go to stdout is written to `out` unless --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orthohaar
