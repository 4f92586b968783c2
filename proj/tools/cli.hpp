#pragma once

#include <ostream>

namespace arboreal::cli {

// Runs the command line; CSV goes to `out` (or the --out file), diagnostics
// and the manifest (when there is no --out) to `err`.  Returns 0 on success,
// 1 on invalid input, 2 when a numerical method fails to converge.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arboreal::cli
