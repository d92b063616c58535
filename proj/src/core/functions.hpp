#pragma once

// Test-function catalogue: radial profiles phi(r) for the weighted-gradient
// identities, line profiles (f, F, G) for the integral-operator identities,
// and the angular factors that turn separable functions f = phi(r) psi(omega)
// into products of a sphere constant and a 1D radial integral.
//
// Ground rules the evaluators rely on:
//   * phi and dphi return their finite limits at r = 0 and r -> inf
//     explicitly (never NaN/Inf), so transformed integrands can sample
//     arbitrarily far into the tails.
//   * interior radii where a derivative jumps or a piecewise definition
//     changes are listed in `kinks` and become forced subdivision points.
//   * every profile carries decay metadata so the caller can pick the right
//     integration strategy without inspecting the formula.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace hardyeq::fn {

struct Decay {
  double support_lo = 0.0;  // identically zero below this radius
  double support_hi = std::numeric_limits<double>::infinity();
  bool power_tail = false;  // for non-compact support: power vs exponential

  bool compact() const { return std::isfinite(support_hi); }
};

struct RadialProfile {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  Decay decay;
  std::vector<double> kinks{};
};

// A function on (0, inf) together with its integral from the left
// (F(x) = int_0^x f) and from the right (G(x) = int_x^inf f), both in closed
// form.  decay describes f itself; F typically tends to a nonzero constant.
struct LineProfile {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> F;
  std::function<double(double)> G;
  Decay decay;
  std::vector<double> kinks{};
};

// C^infty step: 0 below 0, 1 above 1, strictly increasing between.
double smoothstep(double t);
double smoothstep_deriv(double t);

// Surface measure of the unit sphere in R^n.
double unit_sphere_area(int n);

// Angular part of a separable function: mass = int |psi|^2 dS and
// grad_mass = int |grad_S psi|^2 dS over the unit sphere.
struct AngularMode {
  std::string name;
  double mass = 0.0;
  double grad_mass = 0.0;
};

AngularMode angular_constant(int n);
// psi = first spherical harmonic (a coordinate restricted to the sphere);
// grad_mass / mass = n - 1, the first nonzero Laplace-Beltrami eigenvalue.
AngularMode angular_first_harmonic(int n);
// psi = cos(k theta) on the circle (n = 2 only).
AngularMode angular_cosine(int k);

// ---- radial profiles -------------------------------------------------------

RadialProfile radial_gaussian();
RadialProfile radial_exp();
// 1 on [0, a], smooth descent to 0 across [a, b].
RadialProfile radial_bump(double a, double b);
// (1 + r^2)^(-beta/2); power tail, admissible when beta is large enough for
// the weights in play.
RadialProfile radial_power_cutoff(double beta);
// exp(-log^2 r): vanishes to all orders at both 0 and inf.
RadialProfile radial_log_gauss();
RadialProfile radial_constant();

// Near-extremizer for the weighted-gradient identities: r^{-(n-2)/2} on
// [2*eps, 1/(2*eps)] with smoothstep bridges of log-width log 2 down to zero
// at eps and 1/eps.  As eps -> 0 the squared-singularity norm grows like
// 2 |log eps| (times the weight constants) while the bridges contribute an
// eps-independent amount, so the growth is exactly affine in |log eps|.
RadialProfile radial_extremizer_window(int n, double eps);

// Sharpness family for the same identities: r^{-(n-2)/2} times a window in
// t = log r that holds 1 on |t| <= T/2 and descends over bridges of width
// T/2.  The Rayleigh quotient approaches the sharp constant like 1/T^2.
RadialProfile radial_extremizer_sweep(int n, double T);

// Near-extremizer for the logarithmic identity around radius R: in the
// coordinate u = |log(R/r)| the profile is sqrt(u) times a plateau window in
// log u covering [eps, 1/eps].  Keep 1/eps a few hundred at most so r stays
// representable.
RadialProfile log_extremizer_window(double eps, double R);

// ---- line profiles ---------------------------------------------------------

LineProfile line_exp();       // f = e^-x           (f ~ x^0 at 0)
LineProfile line_xsq_exp();   // f = x^2 e^-x       (f ~ x^2 at 0)
LineProfile line_cube_gauss();// f = x^3 e^-x^2     (f ~ x^3 at 0)
// f vanishing identically below a; its primitive is a smoothstep in log x
// rising to 1 across [a, 2a].
LineProfile line_step(double a);
// F = x^(alpha+1)/(alpha+1) inside a closed-form log-window over [a, b]
// (bridges of log-width log 2 outside); f = F' changes sign on the bridges.
LineProfile line_power_window(double alpha, double a, double b);

// Near-extremizers for the integral-operator identities.  The forward family
// carries F = x^{p/2} inside a closed-form window over [eps, 1/eps]; the
// backward family is its inversion x -> 1/x.
LineProfile line_extremizer_window_forward(double p, double eps);
LineProfile line_extremizer_window_backward(double p, double eps);

// Sharpness families: F = x^{p/2} (resp. G = x^{-p/2}) times the T-window in
// t = log x used by radial_extremizer_sweep.
LineProfile line_extremizer_sweep_forward(double p, double T);
LineProfile line_extremizer_sweep_backward(double p, double T);

// Dilations r -> lambda r, carried through derivatives, primitives, decay
// metadata, and kink lists.  Used to exercise the scale covariance of the
// identities.
RadialProfile scaled(const RadialProfile& p, double lambda);
LineProfile scaled(const LineProfile& p, double lambda);

// Inversion x -> 1/x with the Jacobian absorbed: g(x) = f(1/x) / x^2, which
// swaps the two primitives (int_0^x g = G(1/x), int_x^inf g = F(1/x)) and
// carries each forward operator identity at exponent p into the backward one.
LineProfile inverted(const LineProfile& p);

}  // namespace hardyeq::fn
