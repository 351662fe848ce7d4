#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xduct::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // bad input, or a failed verify/oracle check
inline constexpr int kExitSolver = 2;

/// Subcommands: solve, sweep kappa-m|omega, tune, verify, oracle.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace xduct::cli
