#pragma once

// Sharpness and non-attainment experiments.  A Rayleigh quotient here is the
// unscaled squared-singularity norm divided by the energy norm; its supremum
// over admissible functions is the squared sharp constant of the matching
// inequality, approached (never attained) along truncated extremizer
// families.  Divergence diagnostics integrate the exact extremizer forms over
// finite windows and fit the growth against the log window ratio, realizing
// the non-integrability that forbids genuine extremizers.

#include <functional>
#include <string>
#include <vector>

#include "core/functions.hpp"
#include "core/identities.hpp"

namespace hardyeq::sh {

// lhs-without-constant over main term; throws std::domain_error when the
// main term vanishes (undefined quotient)
double rayleigh_T1(const fn::RadialProfile& profile, int n, double rel_tol);
double rayleigh_T2(const fn::RadialProfile& profile, double R, double rel_tol);
double rayleigh_T3_forward(const fn::LineProfile& profile, double p,
                           double rel_tol);
double rayleigh_T3_backward(const fn::LineProfile& profile, double p,
                            double rel_tol);

double sharp_value_T1(int n);                 // 4/(n-2)^2
double sharp_value_T2();                      // 4
double sharp_value_T3(double p);              // (2/p)^2

struct SweepPoint {
  double eps = 0.0;        // truncation parameter
  double quotient = 0.0;
  double allowance = 0.0;  // quadrature-induced uncertainty of the quotient
};

struct SweepResult {
  std::string identity_id;
  std::string family_label;
  double sharp_value = 0.0;
  std::vector<SweepPoint> points;    // ordered by eps descending
  double attained_fraction = 0.0;    // quotient / sharp_value at the finest point
  bool monotone = false;             // nondecreasing within allowances
  bool below_sharp = false;          // never above sharp_value + allowance
};

// Which truncated extremizer family to sweep.  The logarithmic family is
// integrated natively in v = log|log(R/r)| where its integrands are smooth
// compactly supported windows; the anchor radius drops out exactly.
enum class SweepKind { radial, log_anchor, line_forward, line_backward };

SweepResult sharpness_sweep(SweepKind kind, const std::vector<double>& eps_list,
                            int n, double p, double rel_tol);

struct DivergenceWindow {
  double lo = 0.0, hi = 0.0;
};

struct DivergencePoint {
  double lo = 0.0, hi = 0.0;
  double log_ratio = 0.0;  // log(hi/lo), the affine abscissa
  double integral = 0.0;
};

struct DivergenceReport {
  std::string identity_id;
  double amplitude = 0.0;
  double expected_slope = 0.0;  // angular mass (or amplitude^2 on the line)
  double fitted_slope = 0.0;
  double fit_intercept = 0.0;
  double fit_residual = 0.0;    // max |integral - affine prediction|
  std::vector<DivergencePoint> points;
};

// window integrals of |amplitude|^2 * (angular mass) / r over [lo, hi]
DivergenceReport divergence_radial(int n, const fn::AngularMode& mode,
                                   double amplitude,
                                   const std::vector<DivergenceWindow>& windows,
                                   double rel_tol);
// per-side window integrals in u = |log(R/r)| of |amplitude|^2 * mass / u;
// both sides contribute a point per window
DivergenceReport divergence_log(const fn::AngularMode& mode, double amplitude,
                                const std::vector<DivergenceWindow>& windows,
                                double rel_tol);
// 1D windows of |amplitude|^2 / x for the operator identities
DivergenceReport divergence_line(bool forward, double p, double amplitude,
                                 const std::vector<DivergenceWindow>& windows,
                                 double rel_tol);

// Runs an identity evaluation, mapping tail non-convergence of the quadrature
// (the signature of an extremizer-form input) to a diagnostic instead of an
// exception; every other failure still propagates.
struct GuardedEval {
  bool divergent = false;
  std::string note;            // engine message when divergent
  id::IdentityReport report;   // valid only when !divergent
};
GuardedEval evaluate_guarded(const std::function<id::IdentityReport()>& run);

// one report per anchor radius, in the given order
std::vector<id::IdentityReport> r_sweep(const fn::RadialProfile& profile, int n,
                                        const fn::AngularMode& mode,
                                        const std::vector<double>& R_list,
                                        id::T2Form form, double rel_tol);

}  // namespace hardyeq::sh
