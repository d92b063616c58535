#pragma once

#include <ostream>

namespace hqcli {

// The eight-part acceptance battery: catalogue residuals, closed-form
// oracles, remainder-form agreement, sharpness sweeps, divergence fits, the
// randomized decomposition check, invariances, and the full-gradient
// comparison.  Prints one PASS/FAIL line per criterion and returns the
// number of failures.  Runs entirely through the public C interface.
int run_acceptance(std::ostream& out);

}  // namespace hqcli
