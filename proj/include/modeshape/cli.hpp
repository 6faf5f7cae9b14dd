#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modeshape::cli {

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int usage = 1;
inline constexpr int unstable = 2;
inline constexpr int numerical = 3;
inline constexpr int io = 4;
}  // namespace exit_code

/// Runs the command line `args` (without the program name). Reports go to the --out file, or
/// to `out` when none is given; diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modeshape::cli
