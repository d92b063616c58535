#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "core/hilbert.hpp"

using namespace hardyeq;
using hb::Complex;
using hb::LemmaCheck;
using hb::Vec;

namespace {
Vec random_vec(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vec v(d);
  for (Complex& z : v) z = Complex{dist(rng), dist(rng)};
  return v;
}
}  // namespace

TEST_CASE("inner product convention: conjugate-linear second slot") {
  CHECK(hb::inner({{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}) == Complex{0.0, 0.0});
  CHECK(hb::inner({{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}) == Complex{2.0, 0.0});
  CHECK(hb::inner({{1, 0}, {2, 0}}, {{3, 0}, {4, 0}}) == Complex{11.0, 0.0});
  CHECK(hb::inner({{0, 1}}, {{1, 0}}) == Complex{0.0, 1.0});
  CHECK_THROWS_AS(hb::inner({{1, 0}}, {{1, 0}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("polarization ties the three residuals together") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cd(0.05, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec u = random_vec(rng, 16), v = random_vec(rng, 16);
    const double c = cd(rng);
    const LemmaCheck chk = hb::lemma1_residuals(u, v, c);
    const double scale = std::max(1.0, chk.scale);
    CHECK(std::fabs(chk.res_1_24 - 2.0 * chk.res_1_23) <= 1e-12 * scale);
    CHECK(std::fabs(chk.res_1_25 - 2.0 * chk.res_1_23) <= 1e-12 * scale);
    // direct polarization: |u+2cv|^2 - |u|^2 - 4c Re(u|v) - 4c^2 |v|^2 = 0
    Vec w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + 2.0 * c * v[i];
    const double pol = hb::inner(w, w).real() - hb::inner(u, u).real() -
                       4.0 * c * hb::inner(u, v).real() -
                       4.0 * c * c * hb::inner(v, v).real();
    CHECK(std::fabs(pol) <= 1e-12 * scale);
  }
}

TEST_CASE("equality case drives all residuals to zero") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec v = random_vec(rng, 16);
    const double c = 0.1 + 0.01 * trial;
    const Vec u = hb::equality_case_partner(v, c);
    const LemmaCheck chk = hb::lemma1_residuals(u, v, c);
    const double scale = std::max(1.0, chk.scale);
    CHECK(std::fabs(chk.res_1_23) <= 1e-12 * scale);
    CHECK(std::fabs(chk.res_1_24) <= 1e-12 * scale);
    CHECK(std::fabs(chk.res_1_25) <= 1e-12 * scale);
  }
}

TEST_CASE("orthogonalized partner zeroes the paired residual") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec u = random_vec(rng, 16), w = random_vec(rng, 16);
    const double c = 0.3 + 0.02 * trial;
    const Vec v = hb::orthogonalized_partner(u, w, c);
    const LemmaCheck chk = hb::lemma1_residuals(u, v, c);
    const double scale = std::max(1.0, chk.scale);
    CHECK(std::fabs(chk.res_1_25) <= 1e-12 * scale);
    CHECK(std::fabs(chk.res_1_23) <= 1e-12 * scale);
    CHECK(std::fabs(chk.res_1_24) <= 1e-12 * scale);
    // the vanishing residual implies the Cauchy-Schwarz corollary
    const double nu = std::sqrt(hb::inner(u, u).real());
    const double nv = std::sqrt(hb::inner(v, v).real());
    CHECK(nu <= 2.0 * c * nv + 1e-12);
  }
}

TEST_CASE("real-vector overload matches the complex path") {
  const std::vector<double> u{1.0, -2.0, 0.5}, v{0.25, 1.0, -1.5};
  const LemmaCheck a = hb::lemma1_residuals(u, v, 0.7);
  Vec cu(3), cv(3);
  for (int i = 0; i < 3; ++i) { cu[i] = u[i]; cv[i] = v[i]; }
  const LemmaCheck b = hb::lemma1_residuals(cu, cv, 0.7);
  CHECK(a.res_1_23 == b.res_1_23);
  CHECK(a.res_1_24 == b.res_1_24);
  CHECK(a.res_1_25 == b.res_1_25);
}

TEST_CASE("rejects invalid arguments") {
  const Vec v{{1, 0}};
  CHECK_THROWS_AS(hb::lemma1_residuals(v, Vec{{1, 0}, {2, 0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hb::lemma1_residuals(v, v, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hb::lemma1_residuals(v, v, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(hb::orthogonalized_partner(Vec{{0, 0}}, Vec{{1, 0}}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("randomized trial driver: tight gaps, reproducible summaries") {
  const hb::TrialSummary s = hb::lemma1_trials(1000, 16, 7);
  CHECK(s.trials == 1000);
  CHECK(s.dim == 16);
  CHECK(s.passed);
  CHECK(s.max_identity_gap <= hb::kTrialTol);
  CHECK(s.max_polarization_gap <= hb::kTrialTol);
  CHECK(s.max_equality_residual <= hb::kTrialTol);
  // roundoff is small but not zero: the gaps measure real arithmetic noise
  CHECK(s.max_identity_gap > 0.0);

  const hb::TrialSummary again = hb::lemma1_trials(1000, 16, 7);
  CHECK(again.max_identity_gap == s.max_identity_gap);
  CHECK(again.max_polarization_gap == s.max_polarization_gap);
  CHECK(again.max_equality_residual == s.max_equality_residual);
  const hb::TrialSummary other = hb::lemma1_trials(1000, 16, 8);
  CHECK(other.max_identity_gap != s.max_identity_gap);

  CHECK_THROWS_AS(hb::lemma1_trials(0, 16, 1), std::invalid_argument);
  CHECK_THROWS_AS(hb::lemma1_trials(10, 0, 1), std::invalid_argument);
}
