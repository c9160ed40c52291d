#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcons::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;           // success / tautology
inline constexpr int kExitNotTautology = 1;  // taut only
inline constexpr int kExitUsage = 2;        // bad arguments, parse or range errors
inline constexpr int kExitEngine = 3;       // benchmark not a tautology, decode failure

/// Runs `hcons <args...>` (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcons::cli
