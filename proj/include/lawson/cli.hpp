#pragma once

#include <iosfwd>

namespace lawson {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitBlowUp = 2 };

/// Subcommands: run, preset, audit, list. See --help.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lawson
