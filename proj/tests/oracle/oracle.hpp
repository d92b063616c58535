#pragma once

// Reference quadrature for tests: a plain composite Simpson rule on a uniform
// grid.  Deliberately independent of the adaptive engine under test — no
// shared code, no error estimation, just a dense fixed grid whose accuracy is
// O(h^4) and can be reasoned about by hand.

#include <cstddef>
#include <functional>

namespace oracle {

// Composite Simpson over [a, b] with `panels` subintervals (must be even).
// Uses compensated accumulation so 10^7-point grids do not lose digits.
double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t panels);

}  // namespace oracle
