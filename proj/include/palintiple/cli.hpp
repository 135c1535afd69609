#pragma once

#include <iosfwd>

namespace pal {

// Command-line front end. Parses argv, runs one subcommand, writes payload to
// out and diagnostics to err, and returns the process exit code:
//   0 success, 1 usage or parameter error, 2 verification failure /
//   counterexample / theorem violation, 3 I/O or checkpoint error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pal
