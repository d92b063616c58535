#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "core/functions.hpp"
#include "oracle/oracle.hpp"

using namespace hardyeq::fn;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double central_diff(const std::function<double(double)>& f, double x) {
  const double h = 1e-6 * std::max(1.0, std::fabs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

void check_derivative_pairs(const RadialProfile& p, const std::vector<double>& radii) {
  for (double r : radii) {
    const double fd = central_diff(p.phi, r);
    const double an = p.dphi(r);
    CHECK(std::fabs(fd - an) <= 1e-5 * std::max(1.0, std::fabs(an)));
  }
}

void check_profile_limits(const RadialProfile& p) {
  // includes subnormals and the band just under DBL_MAX, where a polynomial
  // prefactor can overflow even though the profile value is an exact zero
  for (double r : {0.0, 5e-324, 1e-320, 1e-300, 1e-30, 1e30, 1e300, 9.5e307,
                   1.5e308, kInf}) {
    CHECK(std::isfinite(p.phi(r)));
    CHECK(std::isfinite(p.dphi(r)));
  }
}
}  // namespace

TEST_CASE("smoothstep endpoints, symmetry, derivative") {
  CHECK(smoothstep(0.0) == 0.0);
  CHECK(smoothstep(1.0) == 1.0);
  CHECK(smoothstep(-2.0) == 0.0);
  CHECK(smoothstep(3.0) == 1.0);
  CHECK(smoothstep(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  for (double t : {0.1, 0.25, 0.4, 0.6, 0.8}) {
    CHECK(smoothstep(t) + smoothstep(1.0 - t) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(smoothstep_deriv(t) > 0.0);
    const double fd = central_diff([](double u) { return smoothstep(u); }, t);
    CHECK(std::fabs(fd - smoothstep_deriv(t)) < 1e-6);
  }
  CHECK(smoothstep_deriv(0.0) == 0.0);
  CHECK(smoothstep_deriv(1.0) == 0.0);
}

TEST_CASE("sphere areas and angular modes") {
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(unit_sphere_area(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));

  const AngularMode c3 = angular_constant(3);
  CHECK(c3.mass == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(c3.grad_mass == 0.0);

  // first harmonic: mass |S^{n-1}|/n, Laplace-Beltrami eigenvalue n-1
  const AngularMode h4 = angular_first_harmonic(4);
  CHECK(h4.mass == doctest::Approx(0.5 * kPi * kPi).epsilon(1e-14));
  CHECK(h4.grad_mass == doctest::Approx(1.5 * kPi * kPi).epsilon(1e-14));

  const AngularMode k3 = angular_cosine(3);
  CHECK(k3.mass == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(k3.grad_mass == doctest::Approx(9.0 * kPi).epsilon(1e-14));
}

TEST_CASE("radial profiles: derivative consistency and finite limits") {
  check_derivative_pairs(radial_gaussian(), {0.3, 0.9, 1.7, 2.8});
  check_derivative_pairs(radial_exp(), {0.2, 1.1, 3.0});
  check_derivative_pairs(radial_bump(1.0, 2.0), {0.5, 1.3, 1.7, 2.5});
  check_derivative_pairs(radial_power_cutoff(4.0), {0.4, 1.5, 6.0, 40.0});
  check_derivative_pairs(radial_log_gauss(), {0.05, 0.6, 1.9, 12.0});
  check_derivative_pairs(radial_extremizer_window(3, 0.05), {0.07, 0.4, 3.0, 14.0});
  check_derivative_pairs(radial_extremizer_sweep(4, 10.0), {0.1, 0.9, 20.0, 2e3});
  check_derivative_pairs(log_extremizer_window(0.02, 1.5), {0.3, 1.2, 2.0, 7.0});

  for (const RadialProfile& p :
       {radial_gaussian(), radial_exp(), radial_bump(1.0, 2.0),
        radial_power_cutoff(4.0), radial_log_gauss(), radial_constant(),
        radial_extremizer_window(3, 0.05), radial_extremizer_sweep(4, 10.0),
        log_extremizer_window(0.02, 1.5)}) {
    check_profile_limits(p);
  }
}

TEST_CASE("extremizer windows hold the exact power law on the plateau") {
  const RadialProfile w = radial_extremizer_window(5, 0.05);  // plateau [0.1, 10]
  for (double r : {0.15, 1.0, 4.0, 9.0})
    CHECK(w.phi(r) == doctest::Approx(std::pow(r, -1.5)).epsilon(1e-14));
  CHECK(w.phi(0.04) == 0.0);
  CHECK(w.phi(25.0) == 0.0);

  const RadialProfile s = radial_extremizer_sweep(3, 8.0);  // plateau e^{+-4}
  for (double r : {0.05, 1.0, 50.0})
    CHECK(s.phi(r) == doctest::Approx(std::pow(r, -0.5)).epsilon(1e-14));
  CHECK(s.phi(std::exp(-9.0)) == 0.0);
  CHECK(s.phi(std::exp(9.0)) == 0.0);
}

TEST_CASE("log-coordinate extremizer vanishes near its anchor radius") {
  const double R = 2.0;
  const RadialProfile p = log_extremizer_window(0.05, R);
  CHECK(p.phi(R) == 0.0);
  CHECK(p.phi(R * std::exp(-0.04)) == 0.0);  // u below the window
  CHECK(p.phi(R * std::exp(0.04)) == 0.0);
  // on the plateau of the window, phi = sqrt(u)
  const double u = 1.0;
  CHECK(p.phi(R * std::exp(-u)) == doctest::Approx(std::sqrt(u)).epsilon(1e-14));
  CHECK(p.phi(R * std::exp(u)) == doctest::Approx(std::sqrt(u)).epsilon(1e-14));
}

TEST_CASE("line profiles: F' = f, G' = -f, F + G constant") {
  const std::vector<LineProfile> profiles{
      line_exp(),
      line_xsq_exp(),
      line_cube_gauss(),
      line_step(0.5),
      line_power_window(1.5, 1.0, 4.0),
      line_extremizer_window_forward(2.0, 0.05),
      line_extremizer_window_backward(2.0, 0.05),
      line_extremizer_sweep_forward(0.5, 8.0),
      line_extremizer_sweep_backward(4.0, 8.0),
  };
  for (const LineProfile& p : profiles) {
    const double mass = p.F(1.0) + p.G(1.0);
    for (double x : {0.3, 0.8, 1.4, 2.9, 6.0}) {
      const double fd_F = central_diff(p.F, x);
      CHECK(std::fabs(fd_F - p.f(x)) <= 2e-5 * std::max(1.0, std::fabs(p.f(x))));
      const double fd_G = central_diff(p.G, x);
      CHECK(std::fabs(fd_G + p.f(x)) <= 2e-5 * std::max(1.0, std::fabs(p.f(x))));
      CHECK(p.F(x) + p.G(x) == doctest::Approx(mass).epsilon(1e-12));
    }
    CHECK(p.F(0.0) == 0.0);
    for (double x : {0.0, 5e-324, 1e-320, 1e-300, 1e-30, 1e30, 1e300, 9.5e307,
                     1.5e308, kInf}) {
      CHECK(std::isfinite(p.f(x)));
      CHECK(std::isfinite(p.F(x)));
      CHECK(std::isfinite(p.G(x)));
    }
  }
}

TEST_CASE("closed-form primitives agree with a reference grid") {
  for (const LineProfile& p : {line_xsq_exp(), line_cube_gauss()}) {
    for (double x : {0.05, 0.2, 0.49, 0.51, 0.9, 2.0}) {
      const double ref = oracle::simpson(p.f, 0.0, x, 20000);
      CHECK(std::fabs(p.F(x) - ref) < 1e-12);
    }
  }
  // primitive of the windowed power family, across the rising bridge and the
  // plateau
  const LineProfile w = line_power_window(1.0, 1.0, 4.0);
  for (double x : {0.7, 1.5, 3.0, 5.0, 9.0}) {
    const double ref = oracle::simpson(w.f, 0.25, x, 40000);
    CHECK(std::fabs(w.F(x) - ref) < 1e-10);
  }
}

TEST_CASE("backward families are the inversion of the forward ones") {
  const LineProfile fwd = line_extremizer_window_forward(1.0, 0.05);
  const LineProfile bwd = line_extremizer_window_backward(1.0, 0.05);
  for (double x : {0.2, 0.7, 1.8, 6.0}) {
    CHECK(bwd.G(x) == doctest::Approx(fwd.F(1.0 / x)).epsilon(1e-14));
    CHECK(bwd.f(x) == doctest::Approx(fwd.f(1.0 / x) / (x * x)).epsilon(1e-13));
  }
  // backward extremizer plateau: G = x^{-p/2}
  for (double x : {0.2, 1.0, 5.0})
    CHECK(bwd.G(x) == doctest::Approx(std::pow(x, -0.5)).epsilon(1e-14));
}

TEST_CASE("inverted swaps the primitives across x -> 1/x") {
  const LineProfile base = line_power_window(1.5, 1.0, 4.0);
  const LineProfile inv = inverted(base);
  const double mass = base.F(1.0) + base.G(1.0);
  for (double x : {0.15, 0.5, 1.0, 2.5, 7.0}) {
    CHECK(inv.f(x) == doctest::Approx(base.f(1.0 / x) / (x * x)).epsilon(1e-13));
    CHECK(inv.F(x) == doctest::Approx(base.G(1.0 / x)).epsilon(1e-14));
    CHECK(inv.G(x) == doctest::Approx(base.F(1.0 / x)).epsilon(1e-14));
    // the total mass survives the substitution
    CHECK(inv.F(x) + inv.G(x) == doctest::Approx(mass).epsilon(1e-13));
  }
  CHECK(inv.F(0.0) == 0.0);
  CHECK(inv.G(0.0) == doctest::Approx(mass).epsilon(1e-14));
  // support bounds and kinks land at the reciprocal radii
  CHECK(inv.decay.support_lo == doctest::Approx(1.0 / base.decay.support_hi));
  CHECK(inv.decay.support_hi == doctest::Approx(1.0 / base.decay.support_lo));
  REQUIRE(inv.kinks.size() == base.kinks.size());
  for (std::size_t i = 0; i < base.kinks.size(); ++i)
    CHECK(inv.kinks[i] == doctest::Approx(1.0 / base.kinks[i]).epsilon(1e-14));
}
