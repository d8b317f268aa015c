#pragma once

// The `grig` command line. Exit codes: 0 success, 1 negative answer (not
// conjugate, or a verification suite failed), 2 bad input, 3 resource guard,
// 4 internal error.

#include <ostream>
#include <string>
#include <vector>

namespace grig {

/// args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

} // namespace grig
