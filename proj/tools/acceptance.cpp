#include "acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hardyeq.h"

namespace hqcli {
namespace {

constexpr double kPi = 3.14159265358979323846;

// handle ownership for the duration of a criterion
struct RadialFree {
  void operator()(hq_radial_profile* p) const { hq_radial_profile_free(p); }
};
struct LineFree {
  void operator()(hq_line_profile* p) const { hq_line_profile_free(p); }
};
struct ReportFree {
  void operator()(hq_report* p) const { hq_report_free(p); }
};
struct SweepFree {
  void operator()(hq_sweep* p) const { hq_sweep_free(p); }
};
struct DivergenceFree {
  void operator()(hq_divergence* p) const { hq_divergence_free(p); }
};
struct LemmaFree {
  void operator()(hq_lemma* p) const { hq_lemma_free(p); }
};
using RadialPtr = std::unique_ptr<hq_radial_profile, RadialFree>;
using LinePtr = std::unique_ptr<hq_line_profile, LineFree>;
using ReportPtr = std::unique_ptr<hq_report, ReportFree>;
using SweepPtr = std::unique_ptr<hq_sweep, SweepFree>;
using DivergencePtr = std::unique_ptr<hq_divergence, DivergenceFree>;
using LemmaPtr = std::unique_ptr<hq_lemma, LemmaFree>;

[[noreturn]] void raise(const std::string& what) {
  throw std::runtime_error(what);
}

void require(bool ok, const std::string& what) {
  if (!ok) raise(what);
}

void require_status(hq_status st, const std::string& context) {
  if (st != HQ_OK) raise(context + ": " + hq_last_error());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

RadialPtr radial(const char* family, std::vector<double> params = {}) {
  hq_radial_profile* p = nullptr;
  require_status(
      hq_radial_profile_create(family, params.data(), params.size(), &p),
      std::string("radial profile '") + family + "'");
  return RadialPtr(p);
}

RadialPtr scaled(const RadialPtr& p, double lambda) {
  hq_radial_profile* q = nullptr;
  require_status(hq_radial_profile_scaled(p.get(), lambda, &q),
                 "scaled radial profile");
  return RadialPtr(q);
}

LinePtr line(const char* family, std::vector<double> params = {}) {
  hq_line_profile* p = nullptr;
  require_status(
      hq_line_profile_create(family, params.data(), params.size(), &p),
      std::string("line profile '") + family + "'");
  return LinePtr(p);
}

LinePtr inverted(const LinePtr& p) {
  hq_line_profile* q = nullptr;
  require_status(hq_line_profile_inverted(p.get(), &q),
                 "inverted line profile");
  return LinePtr(q);
}

ReportPtr eval_gradient(const RadialPtr& p, int n, const char* form,
                        const char* mode, double rel_tol) {
  hq_report* r = nullptr;
  require_status(hq_eval_gradient(p.get(), n, form, mode, rel_tol, &r),
                 "gradient evaluation");
  return ReportPtr(r);
}

ReportPtr eval_anchor(const RadialPtr& p, int n, double R, const char* form,
                      double rel_tol) {
  hq_report* r = nullptr;
  require_status(
      hq_eval_log_anchor(p.get(), n, R, form, "constant", rel_tol, &r),
      "anchored evaluation");
  return ReportPtr(r);
}

ReportPtr eval_average(const LinePtr& p, double exponent, bool backward,
                       double rel_tol) {
  hq_report* r = nullptr;
  const hq_status st =
      backward ? hq_eval_average_backward(p.get(), exponent, rel_tol, &r)
               : hq_eval_average_forward(p.get(), exponent, rel_tol, &r);
  require_status(st, "averaging evaluation");
  return ReportPtr(r);
}

hq_report_terms terms(const ReportPtr& r) {
  hq_report_terms t{};
  hq_report_read(r.get(), &t);
  return t;
}

std::string describe(const ReportPtr& r) {
  std::string s = hq_report_identity(r.get());
  s += '/';
  s += hq_report_profile(r.get());
  if (hq_report_dimension(r.get()) > 0)
    s += " n=" + std::to_string(hq_report_dimension(r.get()));
  if (hq_report_anchor(r.get()) > 0.0)
    s += " R=" + fmt(hq_report_anchor(r.get()));
  if (hq_report_exponent(r.get()) > 0.0)
    s += " p=" + fmt(hq_report_exponent(r.get()));
  return s;
}

void require_close_abs(double got, double want, double tol,
                       const std::string& what) {
  require(std::fabs(got - want) <= tol,
          what + ": got " + fmt(got) + ", want " + fmt(want));
}

void require_close_rel(double got, double want, double tol,
                       const std::string& what) {
  const double scale = std::max(std::fabs(got), std::fabs(want));
  require(std::fabs(got - want) <= tol * scale,
          what + ": got " + fmt(got) + ", want " + fmt(want));
}

// shared catalogue used by criteria 1 and 3
const std::vector<std::pair<const char*, std::vector<double>>> kRadialFamilies =
    {{"gaussian", {}},
     {"exp", {}},
     {"bump", {1.0, 2.5}},
     {"log_gauss", {}},
     {"power_cutoff", {4.0}}};

// the forward identity at weight p needs f with enough vanishing at the
// origin; below p = 2 the exponential qualifies, above it the inversion of
// the cubic-order profile substitutes
std::vector<LinePtr> forward_set(double p) {
  std::vector<LinePtr> v;
  if (p < 2.0)
    v.push_back(line("exp"));
  else
    v.push_back(inverted(line("cube_gauss")));
  v.push_back(line("xsq_exp"));
  v.push_back(line("cube_gauss"));
  v.push_back(line("step", {1.0}));
  v.push_back(line("power_window", {1.5, 1.0, 4.0}));
  return v;
}

std::vector<LinePtr> backward_set() {
  std::vector<LinePtr> v;
  v.push_back(line("exp"));
  v.push_back(line("xsq_exp"));
  v.push_back(line("cube_gauss"));
  v.push_back(line("step", {1.0}));
  v.push_back(line("power_window", {1.5, 1.0, 4.0}));
  return v;
}

const std::vector<double> kExponents = {0.5, 1.0, 2.0, 4.0};
const std::vector<double> kAnchors = {0.5, 1.0, 2.0};
const std::vector<double> kLadder = {1e-2, 1e-4, 1e-8, 1e-16};
const std::vector<double> kWindows = {1e-1, 1e1, 1e-2, 1e2, 1e-3, 1e3, 1e-4, 1e4};

std::string criterion_residual_suite() {
  double worst = 0.0;
  int count = 0;
  auto note = [&](const ReportPtr& r) {
    const hq_report_terms t = terms(r);
    require(hq_report_passed(r.get()) == 1, describe(r) + " did not pass");
    require(t.residual_rel <= 1e-7,
            describe(r) + " residual_rel " + fmt(t.residual_rel));
    worst = std::max(worst, t.residual_rel);
    ++count;
  };
  for (const auto& fam : kRadialFamilies) {
    const RadialPtr p = radial(fam.first, fam.second);
    for (int n : {3, 4, 5})
      note(eval_gradient(p, n, "radial", "constant", 1e-9));
    for (int n : {2, 3})
      for (double R : kAnchors) note(eval_anchor(p, n, R, "direct", 1e-9));
  }
  for (double p : kExponents) {
    for (const LinePtr& f : forward_set(p))
      note(eval_average(f, p, false, 1e-9));
    for (const LinePtr& f : backward_set())
      note(eval_average(f, p, true, 1e-9));
  }
  return "max residual_rel " + fmt(worst) + " over " + std::to_string(count) +
         " evaluations";
}

std::string criterion_oracles() {
  // e^{-r^2/2} in n = 3
  const RadialPtr half = scaled(radial("gaussian"), 1.0 / std::sqrt(2.0));
  const hq_report_terms t1 =
      terms(eval_gradient(half, 3, "radial", "constant", 1e-11));
  const double s = std::pow(kPi, 1.5);
  require_close_abs(t1.lhs, 0.5 * s, 1e-9, "gaussian lhs");
  require_close_abs(t1.main_term, 1.5 * s, 1e-9, "gaussian main");
  require_close_abs(t1.remainder_term, s, 1e-9, "gaussian remainder");

  // e^{-x} under the averaging operator and its adjoint at p = 1
  const LinePtr e = line("exp");
  const double log2 = std::log(2.0);
  const hq_report_terms tf = terms(eval_average(e, 1.0, false, 1e-11));
  require_close_abs(tf.lhs, 0.5 * log2, 1e-9, "forward lhs");
  require_close_abs(tf.main_term, 0.5, 1e-9, "forward main");
  require_close_abs(tf.remainder_term, 0.5 * (1.0 - log2), 1e-9,
                    "forward remainder");
  const hq_report_terms tb = terms(eval_average(e, 1.0, true, 1e-11));
  require_close_abs(tb.lhs, 0.125, 1e-9, "backward lhs");
  require_close_abs(tb.main_term, 0.25, 1e-9, "backward main");
  require_close_abs(tb.remainder_term, 0.125, 1e-9, "backward remainder");
  return "three closed-form triples matched to 1e-9";
}

std::string criterion_remainder_forms() {
  double worst = 0.0;
  auto note = [&worst](double a, double b, const std::string& what) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-30});
    const double rel = std::fabs(a - b) / scale;
    require(rel <= 1e-8, what + " disagree: " + fmt(a) + " vs " + fmt(b));
    worst = std::max(worst, rel);
  };
  for (const auto& fam : kRadialFamilies) {
    const RadialPtr p = radial(fam.first, fam.second);
    for (int n : {3, 4, 5}) {
      const hq_report_terms a =
          terms(eval_gradient(p, n, "radial", "constant", 1e-10));
      const hq_report_terms b =
          terms(eval_gradient(p, n, "product_rule", "constant", 1e-10));
      note(a.remainder_term, b.remainder_term,
           std::string(fam.first) + " gradient remainders");
    }
    for (int n : {2, 3})
      for (double R : kAnchors) {
        const hq_report_terms a = terms(eval_anchor(p, n, R, "direct", 1e-10));
        const hq_report_terms b =
            terms(eval_anchor(p, n, R, "half_power", 1e-10));
        note(a.remainder_term, b.remainder_term,
             std::string(fam.first) + " anchored remainders");
      }
  }
  for (double p : kExponents) {
    for (const LinePtr& f : forward_set(p)) {
      const hq_report_terms t = terms(eval_average(f, p, false, 1e-10));
      double alt = 0.0;
      require_status(hq_average_remainder_alt(f.get(), p, 0, 1e-10, &alt),
                     "alternate forward remainder");
      note(t.remainder_term, alt, "forward remainder forms");
    }
    for (const LinePtr& f : backward_set()) {
      const hq_report_terms t = terms(eval_average(f, p, true, 1e-10));
      double alt = 0.0;
      require_status(hq_average_remainder_alt(f.get(), p, 1, 1e-10, &alt),
                     "alternate backward remainder");
      note(t.remainder_term, alt, "backward remainder forms");
    }
  }
  return "worst relative gap " + fmt(worst);
}

std::string criterion_sharpness() {
  std::string fractions;
  for (const char* kind :
       {"radial", "log_anchor", "line_forward", "line_backward"}) {
    hq_sweep* raw = nullptr;
    require_status(hq_sharpness_sweep(kind, kLadder.data(), kLadder.size(), 3,
                                      2.0, 1e-9, &raw),
                   std::string("sweep '") + kind + "'");
    const SweepPtr sweep(raw);
    const double attained = hq_sweep_attained_fraction(sweep.get());
    require(attained >= 0.98, std::string(kind) + " reached only " +
                                  fmt(attained) + " of the sharp constant");
    require(hq_sweep_monotone(sweep.get()) == 1,
            std::string(kind) + " sweep is not monotone");
    require(hq_sweep_below_sharp(sweep.get()) == 1,
            std::string(kind) + " sweep exceeded the sharp constant");
    if (!fractions.empty()) fractions += '/';
    fractions += fmt(attained);
  }
  return "attained fractions " + fractions;
}

std::string criterion_divergence() {
  const size_t n_windows = kWindows.size() / 2;
  struct Case {
    const char* kind;
    int n;
    double p;
    double slope;
  };
  const Case cases[] = {{"radial", 3, 0.0, 4.0 * kPi},
                        {"log_anchor", 2, 0.0, 2.0 * kPi},
                        {"line_forward", 0, 1.0, 1.0},
                        {"line_backward", 0, 2.0, 1.0}};
  double worst = 0.0;
  for (const Case& c : cases) {
    hq_divergence* raw = nullptr;
    require_status(hq_divergence_run(c.kind, c.n, c.p, 1.0, kWindows.data(),
                                     n_windows, 1e-11, &raw),
                   std::string("divergence '") + c.kind + "'");
    const DivergencePtr rep(raw);
    double expected = 0, fitted = 0, intercept = 0, residual = 0;
    hq_divergence_fit(rep.get(), &expected, &fitted, &intercept, &residual);
    require_close_abs(expected, c.slope, 1e-12, "expected slope");
    const double rel = std::fabs(fitted - expected) / expected;
    require(rel <= 1e-6, std::string(c.kind) + " slope off by " + fmt(rel));
    require(residual <= 1e-8,
            std::string(c.kind) + " fit residual " + fmt(residual));
    worst = std::max(worst, rel);
  }
  return "worst relative slope error " + fmt(worst);
}

std::string criterion_lemma() {
  hq_lemma* raw = nullptr;
  require_status(hq_lemma_run(1000, 16, 7, &raw), "randomized run");
  const LemmaPtr run(raw);
  const double gap = hq_lemma_max_identity_gap(run.get());
  const double eq = hq_lemma_max_equality_residual(run.get());
  require(gap <= 1e-12, "identity gap " + fmt(gap));
  require(eq <= 1e-12, "equality-case residual " + fmt(eq));
  require(hq_lemma_passed(run.get()) == 1, "driver reports failure");
  return "max gap " + fmt(gap) + ", equality residual " + fmt(eq);
}

std::string criterion_invariance() {
  const RadialPtr g = radial("gaussian");
  const hq_report_terms base =
      terms(eval_gradient(g, 3, "radial", "constant", 1e-10));
  const double q0 = base.lhs / base.main_term;
  const RadialPtr lg = radial("log_gauss");
  const hq_report_terms anchor_base = terms(eval_anchor(lg, 2, 1.0, "direct", 1e-10));
  for (double lambda : {1.0 / 3.0, 2.0, 10.0}) {
    const hq_report_terms t =
        terms(eval_gradient(scaled(g, lambda), 3, "radial", "constant", 1e-10));
    require_close_rel(t.lhs / t.main_term, q0, 1e-8,
                      "gradient quotient at lambda " + fmt(lambda));
    // the dilation moves the anchor radius: identical terms at R / lambda
    const hq_report_terms a = terms(
        eval_anchor(scaled(lg, lambda), 2, 1.0 / lambda, "direct", 1e-10));
    require_close_rel(a.lhs, anchor_base.lhs, 1e-8, "anchored lhs");
    require_close_rel(a.main_term, anchor_base.main_term, 1e-8,
                      "anchored main");
    require_close_rel(a.remainder_term, anchor_base.remainder_term, 1e-8,
                      "anchored remainder");
  }
  struct Pair {
    const char* family;
    double p;
  };
  for (const Pair& c : {Pair{"exp", 1.0}, Pair{"cube_gauss", 2.0}}) {
    const LinePtr f = line(c.family);
    const hq_report_terms fwd = terms(eval_average(f, c.p, false, 1e-10));
    const hq_report_terms bwd =
        terms(eval_average(inverted(f), c.p, true, 1e-10));
    require_close_rel(bwd.lhs, fwd.lhs, 1e-8, "dual lhs");
    require_close_rel(bwd.main_term, fwd.main_term, 1e-8, "dual main");
    require_close_rel(bwd.remainder_term, fwd.remainder_term, 1e-8,
                      "dual remainder");
  }
  return "scale and duality invariances within 1e-8";
}

std::string criterion_full_gradient() {
  const RadialPtr g = radial("gaussian");
  // for a radial function the full-gradient identity collapses to the radial
  // one
  const hq_report_terms radial_form =
      terms(eval_gradient(g, 3, "radial", "constant", 1e-10));
  const hq_report_terms full_form =
      terms(eval_gradient(g, 3, "full_gradient", "constant", 1e-10));
  require_close_rel(full_form.lhs, radial_form.lhs, 1e-8, "radial lhs");
  require_close_rel(full_form.main_term, radial_form.main_term, 1e-8,
                    "radial main");
  require_close_rel(full_form.remainder_term, radial_form.remainder_term, 1e-8,
                    "radial remainder");

  // nonradial product function: the extra remainder is exactly the spherical
  // part of the Dirichlet energy
  const hq_report_terms rad4 =
      terms(eval_gradient(g, 4, "radial", "first_harmonic", 1e-10));
  const hq_report_terms full4 =
      terms(eval_gradient(g, 4, "full_gradient", "first_harmonic", 1e-10));
  const hq_report_terms split =
      terms(eval_gradient(g, 4, "dirichlet_split", "first_harmonic", 1e-10));
  const double diff = full4.remainder_term - rad4.remainder_term;
  require_close_rel(diff, split.remainder_term, 1e-8,
                    "spherical Dirichlet component");
  return "spherical component " + fmt(split.remainder_term) +
         " matched to 1e-8";
}

}  // namespace

int run_acceptance(std::ostream& out) {
  struct Criterion {
    const char* label;
    std::function<std::string()> body;
  };
  const Criterion criteria[] = {
      {"identity residual suite", criterion_residual_suite},
      {"closed-form oracle values", criterion_oracles},
      {"remainder-form agreement", criterion_remainder_forms},
      {"sharpness sweeps", criterion_sharpness},
      {"divergence diagnostics", criterion_divergence},
      {"randomized decomposition suite", criterion_lemma},
      {"invariance suite", criterion_invariance},
      {"full-gradient comparison", criterion_full_gradient},
  };
  int failures = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    std::string verdict = "PASS";
    std::string detail;
    try {
      detail = c.body();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failures;
    }
    out << "criterion " << index << ": " << verdict << "  " << c.label << " ("
        << detail << ")\n";
    ++index;
  }
  return failures;
}

}  // namespace hqcli
