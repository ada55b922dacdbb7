#pragma once

#include <ostream>

namespace wmp::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kConfigError = 2 };

// Entry point shared by the executable and the tests. Results go to `out`,
// diagnostics to `err`; --out redirects results to a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wmp::cli
