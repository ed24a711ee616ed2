#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kv {

// Exit codes of the command-line interface.
enum ExitCode : int { exit_ok = 0, exit_math_failure = 1, exit_usage = 2 };

// Runs `kv <verb> [flags]`; args excludes the program name.  Canonical JSON
// goes to --out (or `out` when no --out is given), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kv
