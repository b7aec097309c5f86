#pragma once

#include <iosfwd>

namespace sigmapart {

/// Exit codes: 0 success, 1 invariant failure, 2 configuration error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sigmapart
