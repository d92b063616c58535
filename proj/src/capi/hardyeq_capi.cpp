#include "hardyeq.h"

#include <cmath>
#include <exception>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/functions.hpp"
#include "core/hilbert.hpp"
#include "core/identities.hpp"
#include "core/quadrature.hpp"
#include "core/sharpness.hpp"

using namespace hardyeq;

// The opaque handles are thin owners of the library's value types; every
// getter reads straight from the wrapped value.
struct hq_radial_profile {
  fn::RadialProfile value;
};
struct hq_line_profile {
  fn::LineProfile value;
};
struct hq_report {
  id::IdentityReport value;
};
struct hq_report_list {
  std::vector<hq_report> items;
};
struct hq_sweep {
  sh::SweepResult value;
};
struct hq_divergence {
  sh::DivergenceReport value;
};
struct hq_lemma {
  hb::TrialSummary value;
};

namespace {

thread_local std::string g_last_error;

hq_status fail(hq_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

// Runs body, translating the library's exception vocabulary into status
// codes.  Tail non-convergence is the engine's diagnosis of a divergent
// integral, the expected outcome for exact extremizer-form inputs; it gets
// its own code so callers can report it as a finding rather than a failure.
template <typename F>
hq_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const quad::QuadError& e) {
    hq_status code = HQ_ERROR_QUADRATURE;
    if (e.failure() == quad::QuadFailure::tail_nonconvergence)
      code = HQ_ERROR_DIVERGENT;
    else if (e.failure() == quad::QuadFailure::bad_argument)
      code = HQ_ERROR_INVALID_ARGUMENT;
    return fail(code, e.what());
  } catch (const std::domain_error& e) {
    return fail(HQ_ERROR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HQ_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(HQ_ERROR_INTERNAL, e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_finite(const double* params, size_t n_params) {
  for (size_t i = 0; i < n_params; ++i)
    require(std::isfinite(params[i]), "family parameters must be finite");
}

// The in-core factories assert their preconditions; the library boundary
// promises exceptions instead, so each precondition is checked here.
fn::RadialProfile make_radial(const std::string& family, const double* params,
                              size_t n_params) {
  auto arity = [&](size_t want) {
    require(n_params == want, "radial family '" + family + "' takes " +
                                  std::to_string(want) + " parameter(s)");
  };
  if (family == "gaussian") {
    arity(0);
    return fn::radial_gaussian();
  }
  if (family == "exp") {
    arity(0);
    return fn::radial_exp();
  }
  if (family == "log_gauss") {
    arity(0);
    return fn::radial_log_gauss();
  }
  if (family == "constant") {
    arity(0);
    return fn::radial_constant();
  }
  if (family == "bump") {
    arity(2);
    require(0.0 < params[0] && params[0] < params[1],
            "bump radii must satisfy 0 < inner < outer");
    return fn::radial_bump(params[0], params[1]);
  }
  if (family == "power_cutoff") {
    arity(1);
    require(params[0] > 0.0, "power_cutoff exponent must be positive");
    return fn::radial_power_cutoff(params[0]);
  }
  throw std::invalid_argument("unknown radial family '" + family + "'");
}

fn::LineProfile make_line(const std::string& family, const double* params,
                          size_t n_params) {
  auto arity = [&](size_t want) {
    require(n_params == want, "line family '" + family + "' takes " +
                                  std::to_string(want) + " parameter(s)");
  };
  if (family == "exp") {
    arity(0);
    return fn::line_exp();
  }
  if (family == "xsq_exp") {
    arity(0);
    return fn::line_xsq_exp();
  }
  if (family == "cube_gauss") {
    arity(0);
    return fn::line_cube_gauss();
  }
  if (family == "step") {
    arity(1);
    require(params[0] > 0.0, "step onset must be positive");
    return fn::line_step(params[0]);
  }
  if (family == "power_window") {
    arity(3);
    require(params[0] != -1.0, "power_window exponent -1 is not integrable");
    require(0.0 < params[1] && 2.0 * params[1] <= params[2],
            "power_window needs 0 < lo and hi >= 2 lo");
    return fn::line_power_window(params[0], params[1], params[2]);
  }
  throw std::invalid_argument("unknown line family '" + family + "'");
}

fn::AngularMode make_mode(const std::string& mode, int n) {
  if (mode == "constant") return fn::angular_constant(n);
  if (mode == "first_harmonic") return fn::angular_first_harmonic(n);
  throw std::invalid_argument("unknown angular mode '" + mode + "'");
}

id::T1Form parse_gradient_form(const std::string& form) {
  if (form == "radial") return id::T1Form::radial;
  if (form == "product_rule") return id::T1Form::radial_product_rule;
  if (form == "full_gradient") return id::T1Form::full_gradient;
  if (form == "dirichlet_split") return id::T1Form::dirichlet_split;
  throw std::invalid_argument("unknown gradient form '" + form + "'");
}

id::T2Form parse_anchor_form(const std::string& form) {
  if (form == "direct") return id::T2Form::direct;
  if (form == "half_power") return id::T2Form::half_power;
  throw std::invalid_argument("unknown anchored form '" + form + "'");
}

sh::SweepKind parse_sweep_kind(const std::string& kind) {
  if (kind == "radial") return sh::SweepKind::radial;
  if (kind == "log_anchor") return sh::SweepKind::log_anchor;
  if (kind == "line_forward") return sh::SweepKind::line_forward;
  if (kind == "line_backward") return sh::SweepKind::line_backward;
  throw std::invalid_argument("unknown sweep kind '" + kind + "'");
}

void require_scale(double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda),
          "dilation factor must be positive and finite");
}

hq_status null_argument() {
  return fail(HQ_ERROR_NULL_ARGUMENT, "required pointer argument is NULL");
}

}  // namespace

extern "C" {

const char* hq_status_name(hq_status status) {
  switch (status) {
    case HQ_OK:
      return "ok";
    case HQ_ERROR_NULL_ARGUMENT:
      return "null argument";
    case HQ_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case HQ_ERROR_DOMAIN:
      return "undefined quantity";
    case HQ_ERROR_DIVERGENT:
      return "divergent integral";
    case HQ_ERROR_QUADRATURE:
      return "quadrature failure";
    case HQ_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* hq_last_error(void) { return g_last_error.c_str(); }

const char* hq_version(void) { return "0.1.0"; }

/* ---- catalogue ----------------------------------------------------------- */

hq_status hq_radial_profile_create(const char* family, const double* params,
                                   size_t n_params, hq_radial_profile** out) {
  if (!family || !out || (n_params > 0 && !params)) return null_argument();
  return guarded([&] {
    require_finite(params, n_params);
    *out = new hq_radial_profile{make_radial(family, params, n_params)};
    return HQ_OK;
  });
}

hq_status hq_radial_profile_scaled(const hq_radial_profile* profile,
                                   double lambda, hq_radial_profile** out) {
  if (!profile || !out) return null_argument();
  return guarded([&] {
    require_scale(lambda);
    *out = new hq_radial_profile{fn::scaled(profile->value, lambda)};
    return HQ_OK;
  });
}

const char* hq_radial_profile_name(const hq_radial_profile* profile) {
  return profile ? profile->value.name.c_str() : "";
}

void hq_radial_profile_free(hq_radial_profile* profile) { delete profile; }

hq_status hq_line_profile_create(const char* family, const double* params,
                                 size_t n_params, hq_line_profile** out) {
  if (!family || !out || (n_params > 0 && !params)) return null_argument();
  return guarded([&] {
    require_finite(params, n_params);
    *out = new hq_line_profile{make_line(family, params, n_params)};
    return HQ_OK;
  });
}

hq_status hq_line_profile_scaled(const hq_line_profile* profile, double lambda,
                                 hq_line_profile** out) {
  if (!profile || !out) return null_argument();
  return guarded([&] {
    require_scale(lambda);
    *out = new hq_line_profile{fn::scaled(profile->value, lambda)};
    return HQ_OK;
  });
}

hq_status hq_line_profile_inverted(const hq_line_profile* profile,
                                   hq_line_profile** out) {
  if (!profile || !out) return null_argument();
  return guarded([&] {
    *out = new hq_line_profile{fn::inverted(profile->value)};
    return HQ_OK;
  });
}

const char* hq_line_profile_name(const hq_line_profile* profile) {
  return profile ? profile->value.name.c_str() : "";
}

void hq_line_profile_free(hq_line_profile* profile) { delete profile; }

/* ---- identity evaluation ------------------------------------------------- */

hq_status hq_eval_gradient(const hq_radial_profile* profile, int n,
                           const char* form, const char* mode, double rel_tol,
                           hq_report** out) {
  if (!profile || !form || !mode || !out) return null_argument();
  return guarded([&] {
    *out = new hq_report{id::eval_T1(profile->value, n, make_mode(mode, n),
                                     parse_gradient_form(form), rel_tol)};
    return HQ_OK;
  });
}

hq_status hq_eval_log_anchor(const hq_radial_profile* profile, int n, double R,
                             const char* form, const char* mode, double rel_tol,
                             hq_report** out) {
  if (!profile || !form || !mode || !out) return null_argument();
  return guarded([&] {
    *out = new hq_report{id::eval_T2(profile->value, n, R, make_mode(mode, n),
                                     parse_anchor_form(form), rel_tol)};
    return HQ_OK;
  });
}

hq_status hq_eval_average_forward(const hq_line_profile* profile, double p,
                                  double rel_tol, hq_report** out) {
  if (!profile || !out) return null_argument();
  return guarded([&] {
    *out = new hq_report{id::eval_T3_forward(profile->value, p, rel_tol)};
    return HQ_OK;
  });
}

hq_status hq_eval_average_backward(const hq_line_profile* profile, double p,
                                   double rel_tol, hq_report** out) {
  if (!profile || !out) return null_argument();
  return guarded([&] {
    *out = new hq_report{id::eval_T3_backward(profile->value, p, rel_tol)};
    return HQ_OK;
  });
}

hq_status hq_average_remainder_alt(const hq_line_profile* profile, double p,
                                   int backward, double rel_tol, double* out) {
  if (!profile || !out) return null_argument();
  return guarded([&] {
    *out = backward ? id::t3_backward_remainder_alt(profile->value, p, rel_tol)
                    : id::t3_forward_remainder_alt(profile->value, p, rel_tol);
    return HQ_OK;
  });
}

const char* hq_report_identity(const hq_report* report) {
  return report ? report->value.identity_id.c_str() : "";
}

const char* hq_report_profile(const hq_report* report) {
  return report ? report->value.profile.c_str() : "";
}

const char* hq_report_mode(const hq_report* report) {
  return report ? report->value.mode.c_str() : "";
}

int hq_report_dimension(const hq_report* report) {
  return report ? report->value.n : 0;
}

double hq_report_anchor(const hq_report* report) {
  return report ? report->value.R : 0.0;
}

double hq_report_exponent(const hq_report* report) {
  return report ? report->value.p : 0.0;
}

hq_status hq_report_read(const hq_report* report, hq_report_terms* out) {
  if (!report || !out) return null_argument();
  const id::IdentityReport& r = report->value;
  *out = {r.lhs,          r.main_term,    r.remainder_term,   r.cross_term,
          r.residual_abs, r.residual_rel, r.quad_error_budget};
  return HQ_OK;
}

int hq_report_passed(const hq_report* report) {
  return report && report->value.passed ? 1 : 0;
}

void hq_report_free(hq_report* report) { delete report; }

hq_status hq_anchor_sweep(const hq_radial_profile* profile, int n,
                          const double* radii, size_t n_radii, const char* form,
                          const char* mode, double rel_tol,
                          hq_report_list** out) {
  if (!profile || !form || !mode || !out || (n_radii > 0 && !radii))
    return null_argument();
  return guarded([&] {
    const std::vector<double> R_list(radii, radii + n_radii);
    std::vector<id::IdentityReport> reports =
        sh::r_sweep(profile->value, n, make_mode(mode, n), R_list,
                    parse_anchor_form(form), rel_tol);
    auto list = std::make_unique<hq_report_list>();
    list->items.reserve(reports.size());
    for (id::IdentityReport& rep : reports)
      list->items.push_back(hq_report{std::move(rep)});
    *out = list.release();
    return HQ_OK;
  });
}

size_t hq_report_list_size(const hq_report_list* list) {
  return list ? list->items.size() : 0;
}

const hq_report* hq_report_list_at(const hq_report_list* list, size_t index) {
  if (!list || index >= list->items.size()) return nullptr;
  return &list->items[index];
}

void hq_report_list_free(hq_report_list* list) { delete list; }

/* ---- sharpness and divergence -------------------------------------------- */

hq_status hq_sharpness_sweep(const char* kind, const double* truncations,
                             size_t n_truncations, int n, double p,
                             double rel_tol, hq_sweep** out) {
  if (!kind || !out || (n_truncations > 0 && !truncations))
    return null_argument();
  return guarded([&] {
    const std::vector<double> eps(truncations, truncations + n_truncations);
    *out = new hq_sweep{
        sh::sharpness_sweep(parse_sweep_kind(kind), eps, n, p, rel_tol)};
    return HQ_OK;
  });
}

const char* hq_sweep_identity(const hq_sweep* sweep) {
  return sweep ? sweep->value.identity_id.c_str() : "";
}

const char* hq_sweep_family(const hq_sweep* sweep) {
  return sweep ? sweep->value.family_label.c_str() : "";
}

double hq_sweep_sharp_value(const hq_sweep* sweep) {
  return sweep ? sweep->value.sharp_value : 0.0;
}

size_t hq_sweep_size(const hq_sweep* sweep) {
  return sweep ? sweep->value.points.size() : 0;
}

hq_status hq_sweep_point(const hq_sweep* sweep, size_t index, double* eps,
                         double* quotient, double* allowance) {
  if (!sweep || !eps || !quotient || !allowance) return null_argument();
  if (index >= sweep->value.points.size())
    return fail(HQ_ERROR_INVALID_ARGUMENT, "sweep point index out of range");
  const sh::SweepPoint& pt = sweep->value.points[index];
  *eps = pt.eps;
  *quotient = pt.quotient;
  *allowance = pt.allowance;
  return HQ_OK;
}

double hq_sweep_attained_fraction(const hq_sweep* sweep) {
  return sweep ? sweep->value.attained_fraction : 0.0;
}

int hq_sweep_monotone(const hq_sweep* sweep) {
  return sweep && sweep->value.monotone ? 1 : 0;
}

int hq_sweep_below_sharp(const hq_sweep* sweep) {
  return sweep && sweep->value.below_sharp ? 1 : 0;
}

void hq_sweep_free(hq_sweep* sweep) { delete sweep; }

hq_status hq_sharp_value_gradient(int n, double* out) {
  if (!out) return null_argument();
  return guarded([&] {
    *out = sh::sharp_value_T1(n);
    return HQ_OK;
  });
}

hq_status hq_sharp_value_log_anchor(double* out) {
  if (!out) return null_argument();
  *out = sh::sharp_value_T2();
  return HQ_OK;
}

hq_status hq_sharp_value_average(double p, double* out) {
  if (!out) return null_argument();
  return guarded([&] {
    *out = sh::sharp_value_T3(p);
    return HQ_OK;
  });
}

hq_status hq_divergence_run(const char* kind, int n, double p, double amplitude,
                            const double* windows, size_t n_windows,
                            double rel_tol, hq_divergence** out) {
  if (!kind || !out || (n_windows > 0 && !windows)) return null_argument();
  return guarded([&] {
    std::vector<sh::DivergenceWindow> w(n_windows);
    for (size_t i = 0; i < n_windows; ++i)
      w[i] = {windows[2 * i], windows[2 * i + 1]};
    sh::DivergenceReport rep;
    switch (parse_sweep_kind(kind)) {
      case sh::SweepKind::radial:
        require(n >= 3, "radial divergence requires n >= 3");
        rep = sh::divergence_radial(n, fn::angular_constant(n), amplitude, w,
                                    rel_tol);
        break;
      case sh::SweepKind::log_anchor:
        require(n >= 2, "log-anchor divergence requires n >= 2");
        rep = sh::divergence_log(fn::angular_constant(n), amplitude, w,
                                 rel_tol);
        break;
      case sh::SweepKind::line_forward:
        rep = sh::divergence_line(true, p, amplitude, w, rel_tol);
        break;
      case sh::SweepKind::line_backward:
        rep = sh::divergence_line(false, p, amplitude, w, rel_tol);
        break;
    }
    *out = new hq_divergence{std::move(rep)};
    return HQ_OK;
  });
}

const char* hq_divergence_identity(const hq_divergence* report) {
  return report ? report->value.identity_id.c_str() : "";
}

double hq_divergence_amplitude(const hq_divergence* report) {
  return report ? report->value.amplitude : 0.0;
}

hq_status hq_divergence_fit(const hq_divergence* report, double* expected_slope,
                            double* fitted_slope, double* fit_intercept,
                            double* fit_residual) {
  if (!report || !expected_slope || !fitted_slope || !fit_intercept ||
      !fit_residual)
    return null_argument();
  *expected_slope = report->value.expected_slope;
  *fitted_slope = report->value.fitted_slope;
  *fit_intercept = report->value.fit_intercept;
  *fit_residual = report->value.fit_residual;
  return HQ_OK;
}

size_t hq_divergence_size(const hq_divergence* report) {
  return report ? report->value.points.size() : 0;
}

hq_status hq_divergence_point(const hq_divergence* report, size_t index,
                              double* lo, double* hi, double* log_ratio,
                              double* integral) {
  if (!report || !lo || !hi || !log_ratio || !integral) return null_argument();
  if (index >= report->value.points.size())
    return fail(HQ_ERROR_INVALID_ARGUMENT, "window index out of range");
  const sh::DivergencePoint& pt = report->value.points[index];
  *lo = pt.lo;
  *hi = pt.hi;
  *log_ratio = pt.log_ratio;
  *integral = pt.integral;
  return HQ_OK;
}

void hq_divergence_free(hq_divergence* report) { delete report; }

/* ---- randomized decomposition check -------------------------------------- */

hq_status hq_lemma_run(int trials, int dim, uint64_t seed, hq_lemma** out) {
  if (!out) return null_argument();
  return guarded([&] {
    *out = new hq_lemma{hb::lemma1_trials(trials, dim, seed)};
    return HQ_OK;
  });
}

int hq_lemma_trials(const hq_lemma* run) { return run ? run->value.trials : 0; }

int hq_lemma_dimension(const hq_lemma* run) { return run ? run->value.dim : 0; }

double hq_lemma_max_identity_gap(const hq_lemma* run) {
  return run ? run->value.max_identity_gap : 0.0;
}

double hq_lemma_max_polarization_gap(const hq_lemma* run) {
  return run ? run->value.max_polarization_gap : 0.0;
}

double hq_lemma_max_equality_residual(const hq_lemma* run) {
  return run ? run->value.max_equality_residual : 0.0;
}

int hq_lemma_passed(const hq_lemma* run) {
  return run && run->value.passed ? 1 : 0;
}

void hq_lemma_free(hq_lemma* run) { delete run; }

}  // extern "C"
