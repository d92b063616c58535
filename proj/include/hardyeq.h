#ifndef HARDYEQ_H
#define HARDYEQ_H

/* C interface of the Hardy-identity verification library.
 *
 * Every object the library hands out is an opaque handle created by a
 * hq_*_create / run call and released by the matching hq_*_free; passing
 * NULL to a free is a no-op.  Fallible calls return hq_status and write
 * their result through an out pointer that is touched only on HQ_OK.
 * String getters return pointers owned by the handle, valid until it is
 * freed.  On failure, hq_last_error() describes the most recent problem
 * on the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hq_status {
  HQ_OK = 0,
  HQ_ERROR_NULL_ARGUMENT = 1,  /* a required pointer was NULL */
  HQ_ERROR_INVALID_ARGUMENT = 2, /* a precondition on the inputs failed */
  HQ_ERROR_DOMAIN = 3,         /* the requested quantity is undefined here */
  HQ_ERROR_DIVERGENT = 4,      /* the integral diverges (extremizer-form input) */
  HQ_ERROR_QUADRATURE = 5,     /* the engine could not converge */
  HQ_ERROR_INTERNAL = 6
} hq_status;

const char* hq_status_name(hq_status status);

/* message for the most recent failure on this thread; "" when none */
const char* hq_last_error(void);

const char* hq_version(void);

/* ---- test-function catalogue --------------------------------------------- */

typedef struct hq_radial_profile hq_radial_profile;
typedef struct hq_line_profile hq_line_profile;

/* Radial families (parameter count in parentheses):
 *   "gaussian" (0), "exp" (0), "log_gauss" (0), "constant" (0),
 *   "bump" (2: inner and outer radius), "power_cutoff" (1: tail exponent).
 */
hq_status hq_radial_profile_create(const char* family, const double* params,
                                   size_t n_params, hq_radial_profile** out);
/* profile dilated by lambda > 0: r is replaced by lambda * r */
hq_status hq_radial_profile_scaled(const hq_radial_profile* profile,
                                   double lambda, hq_radial_profile** out);
const char* hq_radial_profile_name(const hq_radial_profile* profile);
void hq_radial_profile_free(hq_radial_profile* profile);

/* Line families:
 *   "exp" (0), "xsq_exp" (0), "cube_gauss" (0),
 *   "step" (1: onset), "power_window" (3: exponent, window lo, window hi).
 */
hq_status hq_line_profile_create(const char* family, const double* params,
                                 size_t n_params, hq_line_profile** out);
hq_status hq_line_profile_scaled(const hq_line_profile* profile, double lambda,
                                 hq_line_profile** out);
/* the substitution x -> 1/x, mapping the averaging identity at weight p
 * onto its adjoint at the same weight */
hq_status hq_line_profile_inverted(const hq_line_profile* profile,
                                   hq_line_profile** out);
const char* hq_line_profile_name(const hq_line_profile* profile);
void hq_line_profile_free(hq_line_profile* profile);

/* ---- identity evaluation ------------------------------------------------- */

typedef struct hq_report hq_report;
typedef struct hq_report_list hq_report_list;

/* the numeric body of one identity evaluation */
typedef struct hq_report_terms {
  double lhs;
  double main_term;
  double remainder_term;
  double cross_term;
  double residual_abs;
  double residual_rel;
  double quad_error_budget;
} hq_report_terms;

/* Gradient identity in dimension n >= 3.
 * form: "radial", "product_rule", "full_gradient", "dirichlet_split".
 * mode: "constant" or "first_harmonic" (angular factor of the product
 * test function; only "constant" keeps the function radial).
 */
hq_status hq_eval_gradient(const hq_radial_profile* profile, int n,
                           const char* form, const char* mode, double rel_tol,
                           hq_report** out);

/* Logarithmic identity anchored at radius R > 0, dimension n >= 2.
 * form: "direct" or "half_power".
 */
hq_status hq_eval_log_anchor(const hq_radial_profile* profile, int n, double R,
                             const char* form, const char* mode, double rel_tol,
                             hq_report** out);

/* Averaging-operator identities on the half line, weight exponent p > 0. */
hq_status hq_eval_average_forward(const hq_line_profile* profile, double p,
                                  double rel_tol, hq_report** out);
hq_status hq_eval_average_backward(const hq_line_profile* profile, double p,
                                   double rel_tol, hq_report** out);

/* The operator remainder evaluated through its second, algebraically equal
 * expression tree; used to cross-check the report's remainder_term. */
hq_status hq_average_remainder_alt(const hq_line_profile* profile, double p,
                                   int backward, double rel_tol, double* out);

const char* hq_report_identity(const hq_report* report);
const char* hq_report_profile(const hq_report* report);
/* "" for the 1D identities */
const char* hq_report_mode(const hq_report* report);
/* 0 when not applicable */
int hq_report_dimension(const hq_report* report);
double hq_report_anchor(const hq_report* report);
double hq_report_exponent(const hq_report* report);
hq_status hq_report_read(const hq_report* report, hq_report_terms* out);
int hq_report_passed(const hq_report* report);
void hq_report_free(hq_report* report);

/* the logarithmic identity across a list of anchor radii, one report each */
hq_status hq_anchor_sweep(const hq_radial_profile* profile, int n,
                          const double* radii, size_t n_radii, const char* form,
                          const char* mode, double rel_tol,
                          hq_report_list** out);
size_t hq_report_list_size(const hq_report_list* list);
/* borrowed reference, valid while the list lives; NULL when out of range */
const hq_report* hq_report_list_at(const hq_report_list* list, size_t index);
void hq_report_list_free(hq_report_list* list);

/* ---- sharpness sweeps and divergence diagnostics ------------------------- */

typedef struct hq_sweep hq_sweep;
typedef struct hq_divergence hq_divergence;

/* Truncated-extremizer sweep toward the sharp constant.
 * kind: "radial" (needs n >= 3), "log_anchor", "line_forward" or
 * "line_backward" (need p > 0).  Truncations lie in (0, 1); points are
 * reported with truncation descending.
 */
hq_status hq_sharpness_sweep(const char* kind, const double* truncations,
                             size_t n_truncations, int n, double p,
                             double rel_tol, hq_sweep** out);
const char* hq_sweep_identity(const hq_sweep* sweep);
const char* hq_sweep_family(const hq_sweep* sweep);
double hq_sweep_sharp_value(const hq_sweep* sweep);
size_t hq_sweep_size(const hq_sweep* sweep);
hq_status hq_sweep_point(const hq_sweep* sweep, size_t index, double* eps,
                         double* quotient, double* allowance);
double hq_sweep_attained_fraction(const hq_sweep* sweep);
int hq_sweep_monotone(const hq_sweep* sweep);
int hq_sweep_below_sharp(const hq_sweep* sweep);
void hq_sweep_free(hq_sweep* sweep);

/* closed-form sharp constants: 4/(n-2)^2, 4, (2/p)^2 */
hq_status hq_sharp_value_gradient(int n, double* out);
hq_status hq_sharp_value_log_anchor(double* out);
hq_status hq_sharp_value_average(double p, double* out);

/* Windowed integrals of the exact extremizer form, fitted affinely against
 * log(hi/lo).  kind as for hq_sharpness_sweep; windows is a flat array
 * lo0, hi0, lo1, hi1, ... of n_windows pairs with 0 < lo < hi < inf.
 */
hq_status hq_divergence_run(const char* kind, int n, double p, double amplitude,
                            const double* windows, size_t n_windows,
                            double rel_tol, hq_divergence** out);
const char* hq_divergence_identity(const hq_divergence* report);
double hq_divergence_amplitude(const hq_divergence* report);
hq_status hq_divergence_fit(const hq_divergence* report, double* expected_slope,
                            double* fitted_slope, double* fit_intercept,
                            double* fit_residual);
size_t hq_divergence_size(const hq_divergence* report);
hq_status hq_divergence_point(const hq_divergence* report, size_t index,
                              double* lo, double* hi, double* log_ratio,
                              double* integral);
void hq_divergence_free(hq_divergence* report);

/* ---- randomized decomposition check -------------------------------------- */

typedef struct hq_lemma hq_lemma;

/* trials random (u, v, c) in the given complex dimension, plus the forced
 * equality case per trial; deterministic for a given seed */
hq_status hq_lemma_run(int trials, int dim, uint64_t seed, hq_lemma** out);
int hq_lemma_trials(const hq_lemma* run);
int hq_lemma_dimension(const hq_lemma* run);
/* worst relative |res_1_24 - 2 res_1_23| across trials */
double hq_lemma_max_identity_gap(const hq_lemma* run);
/* worst relative |res_1_25 - 2 res_1_23| across trials */
double hq_lemma_max_polarization_gap(const hq_lemma* run);
/* worst relative residual of the forced equality cases */
double hq_lemma_max_equality_residual(const hq_lemma* run);
int hq_lemma_passed(const hq_lemma* run);
void hq_lemma_free(hq_lemma* run);

#ifdef __cplusplus
}
#endif

#endif /* HARDYEQ_H */
