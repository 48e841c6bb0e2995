#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace auxetica {

enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,   // analysis answered "no" and --strict was given
  kExitError = 2,
  kExitUndecided = 3,
};

/// Runs one command line (args[0] is the program name). Normal output goes to
/// `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The text printed by `study3d` for a point a = (a11, a22, a33, a13, a23).
std::string study3d_report(const std::vector<double>& a, double r2, int samples, unsigned long long seed);

}  // namespace auxetica
