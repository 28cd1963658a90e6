#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace echo {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;  // a computation or invariant check failed
inline constexpr int kExitUsage = 2;     // bad command line or inadmissible input

/// ECHO_THREADS if set and positive, otherwise the hardware concurrency.
unsigned default_threads();

/// Dispatches a subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace echo
