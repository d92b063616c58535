#pragma once

// Adaptive Gauss-Kronrod quadrature for the weighted radial integrals used by the
// identity evaluators.  The engine is a G7-K15 embedded pair with priority-queue
// (largest-error-first) refinement, QUADPACK-style error estimates, compensated
// final summation, and forced subdivision at caller-declared singular abscissas
// (which are never sampled; all Kronrod nodes are strictly interior).
//
// Semi-infinite integrals run over a log coordinate with geometrically doubling
// tail windows.  Power-law tails produce exactly geometric window sums, so the
// remainder is accelerated with a Richardson table on the partial sums; rapidly
// decaying tails terminate through a plain smallness threshold instead.

#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardyeq::quad {

// Integrand over an interval of the positive axis (or any real interval for
// integrate_finite).  eval must return a finite value at every abscissa the
// integrator samples; points listed in singular_points are never sampled and
// always become subdivision boundaries when they fall inside the domain.
struct Integrand {
  std::function<double(double)> eval;
  std::vector<double> singular_points{};
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subdivisions = 0;
};

enum class QuadFailure {
  bad_argument,         // invalid tolerance, bounds, or hint
  bad_sample,           // integrand returned NaN/Inf
  budget_exhausted,     // subdivision budget hit before convergence
  tail_nonconvergence,  // expanding windows never fell below threshold
};

// Thrown on any failure; carries the best partial result accumulated so far
// (meaningful for budget_exhausted / tail_nonconvergence).
class QuadError : public std::runtime_error {
 public:
  QuadError(QuadFailure failure, const std::string& what, QuadResult partial = {})
      : std::runtime_error(what), failure_(failure), partial_(partial) {}
  QuadFailure failure() const { return failure_; }
  const QuadResult& partial() const { return partial_; }

 private:
  QuadFailure failure_;
  QuadResult partial_;
};

struct QuadLimits {
  std::size_t max_subdivisions = 1'000'000;
};

// How an integrand on (0, inf) dies off; selects the evaluation strategy for
// integrate_halfline.
struct DecayHint {
  enum class Kind { exponential, power, compact_support };
  Kind kind = Kind::exponential;
  double support_lo = 0.0;  // compact_support only
  double support_hi = 0.0;

  static DecayHint exponential() { return {Kind::exponential, 0, 0}; }
  static DecayHint power() { return {Kind::power, 0, 0}; }
  static DecayHint compact(double lo, double hi) {
    return {Kind::compact_support, lo, hi};
  }
};

// Smallest accepted relative tolerance.
inline constexpr double kMinRelTol = 1e-14;

// ∫_a^b g.  Endpoints may be singular: an endpoint of 0 listed in
// singular_points is integrated through the log-substitution path (required for
// tails like 1/(x log^2 x) that plain bisection cannot resolve); other singular
// endpoints rely on the nodes being strictly interior.
QuadResult integrate_finite(const Integrand& g, double a, double b, double rel_tol,
                            const QuadLimits& limits = {});

// ∫_0^inf g, strategy chosen by the decay hint.  Non-compact integrands are
// transformed to the log coordinate and integrated outward from r = 1 in both
// directions with doubling windows.
QuadResult integrate_halfline(const Integrand& g, double rel_tol, DecayHint hint,
                              const QuadLimits& limits = {});

// ∫_0^inf g for an integrand with a (possibly singular) distinguished radius R:
// the domain is split into (0,R) and (R,inf) and each side is integrated in the
// coordinate u = log(R/r) (resp. log(r/R)), so r = R itself is never sampled.
QuadResult integrate_log_split(const Integrand& g, double R, double rel_tol,
                               const QuadLimits& limits = {});

// ∫_0^inf h in the given coordinate directly (no transform): adaptive base
// window [0,1], then doubling tail windows with Richardson acceleration.  The
// endpoint 0 may be singular.  upper_cap bounds the window expansion; reaching
// it raises tail_nonconvergence.  This is the primitive the log-coordinate
// identity evaluators drive directly.
QuadResult integrate_ray(const Integrand& h, double rel_tol,
                         const QuadLimits& limits = {}, double upper_cap = 1.2e18,
                         double abs_floor = 0.0);

}  // namespace hardyeq::quad
