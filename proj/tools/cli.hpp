#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfl::cli {

// Exit codes: 0 when every check of the invoked command passes, 1 when a
// check fails, 2 on usage or input errors.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

// Runs the command line `args` (without the program name). Reports go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfl::cli
