#pragma once

#include <iosfwd>

namespace skillsched {

/// Exit codes: 0 success, 1 the run completed but the schedule overflowed
/// or failed the feasibility check, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `skillsched` binary. Subcommands: validate, solve,
/// exact, sweep, gen, fixture-stats. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skillsched
