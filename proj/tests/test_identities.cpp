#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "core/identities.hpp"
#include "oracle/oracle.hpp"

using namespace hardyeq;
using id::eval_T1;
using id::eval_T2;
using id::eval_T3_backward;
using id::eval_T3_forward;
using id::IdentityReport;
using id::T1Form;
using id::T2Form;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
const double kSqrtPi = std::sqrt(kPi);

void check_value(double got, double want, double tol = 1e-9) {
  CHECK(std::fabs(got - want) <= tol * std::max(1.0, std::fabs(want)));
}
}  // namespace

TEST_CASE("gradient identity against closed forms (gaussian, n = 3)") {
  const fn::RadialProfile g = fn::radial_gaussian();
  const fn::AngularMode m = fn::angular_constant(3);
  for (T1Form form : {T1Form::radial, T1Form::radial_product_rule}) {
    const IdentityReport rep = eval_T1(g, 3, m, form, 1e-11);
    check_value(rep.lhs, 0.25 * kPi * kSqrt2Pi);
    check_value(rep.main_term, 0.75 * kPi * kSqrt2Pi);
    check_value(rep.remainder_term, 0.5 * kPi * kSqrt2Pi);
    check_value(rep.cross_term, kPi * kSqrt2Pi);
    CHECK(rep.residual_rel < 1e-9);
    CHECK(rep.passed);
  }
}

TEST_CASE("full gradient and Dirichlet split closed forms (gaussian, n = 4)") {
  const fn::RadialProfile g = fn::radial_gaussian();
  const fn::AngularMode m = fn::angular_first_harmonic(4);
  const double pi2 = kPi * kPi;

  const IdentityReport full = eval_T1(g, 4, m, T1Form::full_gradient, 1e-11);
  check_value(full.lhs, pi2 / 8.0);
  check_value(full.main_term, 5.0 * pi2 / 8.0);
  check_value(full.remainder_term, pi2 / 2.0);
  CHECK(full.passed);

  const IdentityReport split = eval_T1(g, 4, m, T1Form::dirichlet_split, 1e-11);
  check_value(split.lhs, 5.0 * pi2 / 8.0);
  check_value(split.main_term, pi2 / 4.0);
  check_value(split.remainder_term, 3.0 * pi2 / 8.0);
  CHECK(split.passed);
}

TEST_CASE("logarithmic identity against closed forms (log gaussian, n = 2, R = 1)") {
  const fn::RadialProfile g = fn::radial_log_gauss();
  const fn::AngularMode m = fn::angular_constant(2);
  for (T2Form form : {T2Form::direct, T2Form::half_power}) {
    const IdentityReport rep = eval_T2(g, 2, 1.0, m, form, 1e-11);
    check_value(rep.lhs, kPi * (2.0 * kSqrtPi - kSqrt2Pi));
    check_value(rep.main_term, kPi * kSqrt2Pi);
    check_value(rep.remainder_term, 2.0 * kPi * (kSqrt2Pi - kSqrtPi));
    check_value(rep.cross_term, 4.0 * kPi * (2.0 * kSqrtPi - kSqrt2Pi));
    CHECK(rep.residual_rel < 1e-9);
    CHECK(rep.passed);
  }
}

TEST_CASE("logarithmic remainder against a reference grid (gaussian, R = 1)") {
  // direct grid evaluation of the remainder sides in u = |log r|.  Each side
  // decays like (limit difference / 2u)^2, so truncate at 10^6 and add the
  // analytic 1/u^2 tail; at u = 0 both sides tend to (phi'(1)/2)^2 = e^{-2}.
  const fn::RadialProfile g = fn::radial_gaussian();
  double ref = 0.0;
  for (double s : {1.0, -1.0}) {
    auto f = [&](double u) {
      if (u == 0.0) return std::exp(-2.0);
      const double r = std::exp(-s * u);
      const double rd = std::isfinite(r) ? g.dphi(r) * r : 0.0;
      const double ratio = (g.phi(r) - g.phi(1.0)) / (s * u);
      return (rd + 0.5 * ratio) * (rd + 0.5 * ratio);
    };
    ref += oracle::simpson(f, 0.0, 50.0, 2'000'000);
    ref += oracle::simpson(f, 50.0, 1000.0, 1'000'000);
    ref += oracle::simpson(f, 1000.0, 1e6, 1'000'000);
    const double jump = s > 0 ? 1.0 - std::exp(-1.0)   // phi(0) - phi(1)
                              : std::exp(-1.0);        // phi(1) - limit 0
    ref += 0.25 * jump * jump / 1e6;
  }
  const IdentityReport rep =
      eval_T2(g, 2, 1.0, fn::angular_constant(2), T2Form::direct, 1e-10);
  check_value(rep.remainder_term, 2.0 * kPi * ref, 2e-9);
}

TEST_CASE("operator identities against closed forms (exponential, p = 1)") {
  const fn::LineProfile e = fn::line_exp();
  const double log2 = std::log(2.0);

  const IdentityReport fwd = eval_T3_forward(e, 1.0, 1e-11);
  check_value(fwd.lhs, 0.5 * log2);
  check_value(fwd.main_term, 0.5);
  check_value(fwd.remainder_term, 0.5 * (1.0 - log2));
  check_value(fwd.cross_term, 2.0 * log2);
  CHECK(fwd.passed);

  const IdentityReport bwd = eval_T3_backward(e, 1.0, 1e-11);
  check_value(bwd.lhs, 0.125);
  check_value(bwd.main_term, 0.25);
  check_value(bwd.remainder_term, 0.125);
  check_value(bwd.cross_term, 0.5);
  CHECK(bwd.passed);
}

TEST_CASE("residuals close across the catalogue") {
  const double rel = 1e-9, bound = 1e-7;

  for (int n : {3, 4, 5}) {
    const fn::AngularMode m = fn::angular_constant(n);
    for (const fn::RadialProfile& pr :
         {fn::radial_gaussian(), fn::radial_exp(), fn::radial_bump(1.0, 2.0),
          fn::radial_power_cutoff(2.0 * n), fn::radial_log_gauss(),
          fn::radial_extremizer_window(n, 0.1)}) {
      for (T1Form form : {T1Form::radial, T1Form::full_gradient}) {
        const IdentityReport rep = eval_T1(pr, n, m, form, rel);
        INFO(rep.identity_id, " ", rep.profile, " n=", n);
        CHECK(rep.residual_rel <= bound);
        CHECK(rep.passed);
      }
    }
  }

  for (double R : {0.5, 2.0}) {
    for (const fn::RadialProfile& pr :
         {fn::radial_gaussian(), fn::radial_bump(1.0, 2.0), fn::radial_log_gauss(),
          fn::radial_constant(), fn::log_extremizer_window(0.02, R)}) {
      const IdentityReport rep = eval_T2(pr, 2, R, fn::angular_constant(2),
                                         T2Form::direct, rel);
      INFO(rep.profile, " R=", R);
      CHECK(rep.residual_rel <= bound);
      CHECK(rep.passed);
    }
  }

  struct Case { fn::LineProfile lp; double p; };
  const std::vector<Case> fwd_cases{
      {fn::line_exp(), 0.5},        {fn::line_exp(), 1.0},
      {fn::line_xsq_exp(), 4.0},    {fn::line_cube_gauss(), 2.0},
      {fn::line_step(0.5), 0.5},    {fn::line_power_window(1.5, 1.0, 4.0), 2.0},
      {fn::line_extremizer_window_forward(2.0, 0.05), 2.0}};
  for (const Case& c : fwd_cases) {
    const IdentityReport rep = eval_T3_forward(c.lp, c.p, rel);
    INFO(rep.profile, " p=", c.p);
    CHECK(rep.residual_rel <= bound);
    CHECK(rep.passed);
  }
  const std::vector<Case> bwd_cases{
      {fn::line_exp(), 0.5},        {fn::line_exp(), 2.0},
      {fn::line_xsq_exp(), 4.0},    {fn::line_cube_gauss(), 1.0},
      {fn::line_step(0.5), 2.0},    {fn::line_power_window(1.5, 1.0, 4.0), 0.5},
      {fn::line_extremizer_window_backward(2.0, 0.05), 2.0}};
  for (const Case& c : bwd_cases) {
    const IdentityReport rep = eval_T3_backward(c.lp, c.p, rel);
    INFO(rep.profile, " p=", c.p);
    CHECK(rep.residual_rel <= bound);
    CHECK(rep.passed);
  }
}

TEST_CASE("the two remainder trees agree") {
  const double rel = 1e-10, tol = 1e-8;
  for (int n : {3, 4}) {
    const fn::AngularMode m = fn::angular_constant(n);
    for (const fn::RadialProfile& pr :
         {fn::radial_gaussian(), fn::radial_power_cutoff(2.0 * n),
          fn::radial_log_gauss()}) {
      const double a = eval_T1(pr, n, m, T1Form::radial, rel).remainder_term;
      const double b = eval_T1(pr, n, m, T1Form::radial_product_rule, rel).remainder_term;
      CHECK(std::fabs(a - b) <= tol * std::max(1.0, std::fabs(a)));
    }
  }
  for (const fn::RadialProfile& pr : {fn::radial_gaussian(), fn::radial_log_gauss()}) {
    const fn::AngularMode m = fn::angular_constant(2);
    const double a = eval_T2(pr, 2, 1.5, m, T2Form::direct, rel).remainder_term;
    const double b = eval_T2(pr, 2, 1.5, m, T2Form::half_power, rel).remainder_term;
    CHECK(std::fabs(a - b) <= tol * std::max(1.0, std::fabs(a)));
  }
  for (double p : {0.5, 2.0}) {
    const fn::LineProfile lp = fn::line_cube_gauss();
    const double a = eval_T3_forward(lp, p, rel).remainder_term;
    const double b = id::t3_forward_remainder_alt(lp, p, rel);
    CHECK(std::fabs(a - b) <= tol * std::max(1.0, std::fabs(a)));
    const double c = eval_T3_backward(lp, p, rel).remainder_term;
    const double d = id::t3_backward_remainder_alt(lp, p, rel);
    CHECK(std::fabs(c - d) <= tol * std::max(1.0, std::fabs(c)));
  }
}

TEST_CASE("cross term recovers the singularity integral") {
  const double rel = 1e-10, tol = 1e-8;
  const IdentityReport t1 =
      eval_T1(fn::radial_gaussian(), 5, fn::angular_constant(5), T1Form::radial, rel);
  const double c1 = 0.5 * (5 - 2);
  CHECK(std::fabs(t1.cross_term - t1.lhs / (c1 * c1)) <=
        tol * std::max(1.0, std::fabs(t1.cross_term)));

  const IdentityReport t2 = eval_T2(fn::radial_gaussian(), 2, 1.0,
                                    fn::angular_constant(2), T2Form::direct, rel);
  CHECK(std::fabs(t2.cross_term - 4.0 * t2.lhs) <=
        tol * std::max(1.0, std::fabs(t2.cross_term)));

  const IdentityReport t3 = eval_T3_forward(fn::line_cube_gauss(), 2.0, rel);
  CHECK(std::fabs(t3.cross_term - t3.lhs) <=
        tol * std::max(1.0, std::fabs(t3.cross_term)));
}

TEST_CASE("terms transform covariantly under dilation") {
  const double rel = 1e-10, tol = 1e-8, lambda = 2.0;

  const fn::RadialProfile g = fn::radial_gaussian();
  const IdentityReport base =
      eval_T1(g, 3, fn::angular_constant(3), T1Form::radial, rel);
  const IdentityReport moved =
      eval_T1(fn::scaled(g, lambda), 3, fn::angular_constant(3), T1Form::radial, rel);
  const double factor = std::pow(lambda, -1.0);  // lambda^{2-n}
  CHECK(std::fabs(moved.lhs - factor * base.lhs) <= tol);
  CHECK(std::fabs(moved.main_term - factor * base.main_term) <= tol);
  CHECK(std::fabs(moved.remainder_term - factor * base.remainder_term) <= tol);

  // moving the profile by lambda is the same as moving the anchor radius
  const IdentityReport a = eval_T2(fn::scaled(g, lambda), 2, 1.0,
                                   fn::angular_constant(2), T2Form::direct, rel);
  const IdentityReport b =
      eval_T2(g, 2, lambda, fn::angular_constant(2), T2Form::direct, rel);
  CHECK(std::fabs(a.lhs - b.lhs) <= tol);
  CHECK(std::fabs(a.main_term - b.main_term) <= tol);
  CHECK(std::fabs(a.remainder_term - b.remainder_term) <= tol);

  const fn::LineProfile e = fn::line_cube_gauss();
  const IdentityReport f0 = eval_T3_forward(e, 1.0, rel);
  const IdentityReport f1 = eval_T3_forward(fn::scaled(e, lambda), 1.0, rel);
  const double p_factor = std::pow(lambda, 1.0 - 2.0);  // lambda^{p-2}
  CHECK(std::fabs(f1.lhs - p_factor * f0.lhs) <= tol);
  CHECK(std::fabs(f1.main_term - p_factor * f0.main_term) <= tol);
  CHECK(std::fabs(f1.remainder_term - p_factor * f0.remainder_term) <= tol);
}

TEST_CASE("forward and backward identities are dual under inversion") {
  const double rel = 1e-10, tol = 1e-8;
  for (double p : {0.5, 2.0}) {
    const IdentityReport fwd =
        eval_T3_forward(fn::line_extremizer_window_forward(p, 0.05), p, rel);
    const IdentityReport bwd =
        eval_T3_backward(fn::line_extremizer_window_backward(p, 0.05), p, rel);
    CHECK(std::fabs(fwd.lhs - bwd.lhs) <= tol * std::max(1.0, std::fabs(fwd.lhs)));
    CHECK(std::fabs(fwd.main_term - bwd.main_term) <=
          tol * std::max(1.0, std::fabs(fwd.main_term)));
    CHECK(std::fabs(fwd.remainder_term - bwd.remainder_term) <=
          tol * std::max(1.0, std::fabs(fwd.remainder_term)));
  }
}

TEST_CASE("two-vector decomposition in the weighted spaces") {
  // integration by parts makes the singularity density orthogonal to
  // u + 2cv in each weighted space, so every residual of the instantiation
  // is a quadrature zero for every admissible profile
  const double rel = 1e-10, tol = 1e-8;
  const std::vector<hb::LemmaCheck> checks = {
      id::lemma_weighted_T1(fn::radial_gaussian(), 3, fn::angular_constant(3), rel),
      id::lemma_weighted_T1(fn::radial_bump(1.0, 2.5), 5,
                            fn::angular_first_harmonic(5), rel),
      id::lemma_weighted_T2(fn::radial_log_gauss(), 1.0, fn::angular_constant(2), rel),
      id::lemma_weighted_T2(fn::radial_gaussian(), 2.0, fn::angular_cosine(2), rel),
      id::lemma_weighted_T3_forward(fn::line_exp(), 1.0, rel),
      id::lemma_weighted_T3_forward(fn::line_cube_gauss(), 2.0, rel),
  };
  for (const hb::LemmaCheck& t : checks) {
    const double scale = std::max(1.0, t.scale);
    CHECK(std::fabs(t.res_1_23) <= tol * scale);
    CHECK(std::fabs(t.res_1_24) <= tol * scale);
    CHECK(std::fabs(t.res_1_25) <= tol * scale);
  }
}

TEST_CASE("per-side breakdown sums to the logarithmic identity terms") {
  const double rel = 1e-10;
  const fn::RadialProfile g = fn::radial_gaussian();
  const fn::AngularMode m = fn::angular_constant(2);
  const double A = m.mass;
  const IdentityReport rep = eval_T2(g, 2, 1.5, m, T2Form::direct, rel);
  const id::T2SideBreakdown sides = id::eval_T2_sides(g, 1.5, rel);
  check_value(0.25 * A * (sides.lhs_core_inner + sides.lhs_core_outer), rep.lhs, 1e-9);
  check_value(A * (sides.main_inner + sides.main_outer), rep.main_term, 1e-9);
  check_value(A * (sides.remainder_inner + sides.remainder_outer),
              rep.remainder_term, 1e-9);
  CHECK(sides.lhs_core_inner > 0.0);
  CHECK(sides.lhs_core_outer > 0.0);
}

TEST_CASE("dropping the remainder leaves the corollary inequality") {
  const IdentityReport rep = eval_T1(fn::radial_gaussian(), 3,
                                     fn::angular_constant(3), T1Form::radial, 1e-9);
  CHECK(id::corollary_inequality_holds(rep));
  CHECK(rep.main_term - rep.lhs > 0.1);  // strict slack for a non-extremizer
}

TEST_CASE("difference and logarithm bounds hold on sampled pairs") {
  // |phi(r) - phi(R)| <= sup|phi'| (R - r) with an analytic derivative bound,
  // and log(R/r) >= (R - r)/R, at randomly sampled 0 < r < R
  struct Entry { fn::RadialProfile pr; double dbound; };
  const std::vector<Entry> entries{
      {fn::radial_gaussian(), std::sqrt(2.0 / std::exp(1.0))},
      {fn::radial_exp(), 1.0},
      {fn::radial_bump(1.0, 2.0), 2.0},  // smoothstep derivative peaks at 2
  };
  std::mt19937_64 rng(420);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (const Entry& e : entries) {
    for (int i = 0; i < 1000; ++i) {
      const double R = 0.05 + 4.0 * dist(rng);
      const double r = R * (0.01 + 0.98 * dist(rng));
      const double diff = std::fabs(e.pr.phi(r) - e.pr.phi(R));
      CHECK(diff * diff <= e.dbound * e.dbound * (R - r) * (R - r) * (1.0 + 1e-12));
      CHECK(std::log(R / r) >= (R - r) / R);
    }
  }
}

TEST_CASE("rejects invalid parameters and non-normalisable input") {
  CHECK_THROWS_AS(eval_T1(fn::radial_gaussian(), 2, fn::angular_constant(2),
                          T1Form::radial, 1e-9),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_T2(fn::radial_gaussian(), 2, 0.0, fn::angular_constant(2),
                          T2Form::direct, 1e-9),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_T3_forward(fn::line_exp(), -1.0, 1e-9), std::invalid_argument);
  // squared-singularity norm of (1+r^2)^{-1/2} diverges in n = 5
  CHECK_THROWS_AS(eval_T1(fn::radial_power_cutoff(1.0), 5, fn::angular_constant(5),
                          T1Form::radial, 1e-9),
                  quad::QuadError);
}
