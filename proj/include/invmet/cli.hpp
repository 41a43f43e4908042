#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace invmet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRegime = 3;

/// Runs one subcommand (bounds, disc, sibony, oracle, sweep, fit, accept). `args` excludes the
/// program name. Results go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, char** argv);

}  // namespace invmet::cli
