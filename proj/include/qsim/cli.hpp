#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsim::cli {

/// Runs the `qsim` command line. `args` excludes the program name. Output is
/// buffered and written to `out` only when the command succeeds; diagnostics
/// go to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qsim::cli
