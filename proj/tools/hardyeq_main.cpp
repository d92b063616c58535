// command-line front end over the shared library: identity verification,
// sharpness sweeps, divergence diagnostics, the randomized decomposition
// check, and the acceptance battery, with JSON/CSV/plot artifacts
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "hardyeq.h"
#include "report_io.hpp"

namespace {

constexpr int kExitNumerical = 1;  // residual, monotonicity, or fit failure
constexpr int kExitUsage = 2;      // bad flags or invalid parameters

// gates for the divergence fit; fixed rather than user-tunable because the
// windowed integrals of the exact extremizer forms are closed-form
constexpr double kSlopeRelTol = 1e-6;
constexpr double kFitResidualTol = 1e-8;

struct RadialFree {
  void operator()(hq_radial_profile* p) const { hq_radial_profile_free(p); }
};
struct LineFree {
  void operator()(hq_line_profile* p) const { hq_line_profile_free(p); }
};
struct ReportFree {
  void operator()(hq_report* p) const { hq_report_free(p); }
};
struct ListFree {
  void operator()(hq_report_list* p) const { hq_report_list_free(p); }
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

struct Options {
  int theorem = 1;
  int n = 3;
  double p = 1.0;
  double anchor = 1.0;
  std::vector<double> radii = {0.5, 1.0, 2.0};
  std::string family;  // empty: per-theorem default
  std::vector<double> params;
  std::string direction = "forward";
  std::string form;  // empty: per-theorem default
  double rel_tol = 1e-9;
  double threshold = 1e-7;
  std::string format = "json";
  std::string output;  // empty: stdout
  std::vector<double> truncations = {1e-2, 1e-4, 1e-8, 1e-16};
  double amplitude = 1.0;
  std::vector<double> windows = {1e-1, 1e1, 1e-2, 1e2, 1e-3, 1e3, 1e-4, 1e4};
  int trials = 1000;
  int dim = 16;
  std::uint64_t seed = 0;
};

int usage_error(const std::string& message) {
  std::cerr << "hardyeq: " << message << '\n';
  return kExitUsage;
}

// invalid input surfaces as a usage error; everything else the library can
// report (divergent lhs, quadrature trouble) is a numerical finding
int api_error(hq_status st) {
  std::cerr << "hardyeq: " << hq_last_error() << '\n';
  return st == HQ_ERROR_INVALID_ARGUMENT || st == HQ_ERROR_NULL_ARGUMENT
             ? kExitUsage
             : kExitNumerical;
}

std::string family_or(const Options& o, const char* fallback) {
  return o.family.empty() ? fallback : o.family;
}

const char* sweep_kind(const Options& o) {
  if (o.theorem == 1) return "radial";
  if (o.theorem == 2) return "log_anchor";
  return o.direction == "backward" ? "line_backward" : "line_forward";
}

int emit(const Options& o, const std::string& artifact, bool ok) {
  if (!hqcli::write_artifact(o.output, artifact)) return kExitNumerical;
  return ok ? 0 : kExitNumerical;
}

int run_verify(const Options& o) {
  if (o.format == "plot")
    return usage_error("plot output is only defined for sharpness and divergence");
  hq_report* raw = nullptr;
  hq_status st = HQ_OK;
  if (o.theorem == 3) {
    hq_line_profile* f = nullptr;
    st = hq_line_profile_create(family_or(o, "exp").c_str(), o.params.data(),
                                o.params.size(), &f);
    if (st != HQ_OK) return api_error(st);
    const std::unique_ptr<hq_line_profile, LineFree> guard(f);
    st = o.direction == "backward"
             ? hq_eval_average_backward(f, o.p, o.rel_tol, &raw)
             : hq_eval_average_forward(f, o.p, o.rel_tol, &raw);
  } else {
    hq_radial_profile* pr = nullptr;
    st = hq_radial_profile_create(family_or(o, "gaussian").c_str(),
                                  o.params.data(), o.params.size(), &pr);
    if (st != HQ_OK) return api_error(st);
    const std::unique_ptr<hq_radial_profile, RadialFree> guard(pr);
    if (o.theorem == 1) {
      const std::string form = o.form.empty() ? "radial" : o.form;
      st = hq_eval_gradient(pr, o.n, form.c_str(), "constant", o.rel_tol, &raw);
    } else {
      const std::string form = o.form.empty() ? "direct" : o.form;
      st = hq_eval_log_anchor(pr, o.n, o.anchor, form.c_str(), "constant",
                              o.rel_tol, &raw);
    }
  }
  if (st != HQ_OK) return api_error(st);
  const std::unique_ptr<hq_report, ReportFree> report(raw);
  hq_report_terms t{};
  hq_report_read(report.get(), &t);
  const std::string artifact = o.format == "csv"
                                   ? hqcli::reports_to_csv({report.get()})
                                   : hqcli::reports_to_json({report.get()});
  return emit(o, artifact, t.residual_rel <= o.threshold);
}

int run_r_sweep(const Options& o) {
  if (o.format == "plot")
    return usage_error("plot output is only defined for sharpness and divergence");
  hq_radial_profile* pr = nullptr;
  hq_status st = hq_radial_profile_create(family_or(o, "gaussian").c_str(),
                                          o.params.data(), o.params.size(), &pr);
  if (st != HQ_OK) return api_error(st);
  const std::unique_ptr<hq_radial_profile, RadialFree> guard(pr);
  hq_report_list* raw = nullptr;
  const std::string form = o.form.empty() ? "direct" : o.form;
  st = hq_anchor_sweep(pr, o.n, o.radii.data(), o.radii.size(), form.c_str(),
                       "constant", o.rel_tol, &raw);
  if (st != HQ_OK) return api_error(st);
  const std::unique_ptr<hq_report_list, ListFree> list(raw);
  std::vector<const hq_report*> reports;
  bool ok = true;
  for (std::size_t i = 0; i < hq_report_list_size(list.get()); ++i) {
    const hq_report* rep = hq_report_list_at(list.get(), i);
    reports.push_back(rep);
    hq_report_terms t{};
    hq_report_read(rep, &t);
    ok = ok && t.residual_rel <= o.threshold;
  }
  const std::string artifact = o.format == "csv"
                                   ? hqcli::reports_to_csv(reports)
                                   : hqcli::reports_to_json(reports);
  return emit(o, artifact, ok);
}

int run_sharpness(const Options& o) {
  hq_sweep* raw = nullptr;
  const hq_status st =
      hq_sharpness_sweep(sweep_kind(o), o.truncations.data(),
                         o.truncations.size(), o.n, o.p, o.rel_tol, &raw);
  if (st != HQ_OK) return api_error(st);
  const std::unique_ptr<hq_sweep, SweepFree> sweep(raw);
  std::string artifact;
  if (o.format == "csv")
    artifact = hqcli::sweep_to_csv(sweep.get());
  else if (o.format == "plot")
    artifact = hqcli::sweep_to_plot(sweep.get());
  else
    artifact = hqcli::sweep_to_json(sweep.get());
  const bool ok = hq_sweep_monotone(sweep.get()) == 1 &&
                  hq_sweep_below_sharp(sweep.get()) == 1;
  return emit(o, artifact, ok);
}

int run_divergence(const Options& o) {
  if (o.windows.empty() || o.windows.size() % 2 != 0)
    return usage_error("--windows takes lo/hi pairs");
  hq_divergence* raw = nullptr;
  const hq_status st =
      hq_divergence_run(sweep_kind(o), o.n, o.p, o.amplitude, o.windows.data(),
                        o.windows.size() / 2, o.rel_tol, &raw);
  if (st != HQ_OK) return api_error(st);
  const std::unique_ptr<hq_divergence, DivergenceFree> report(raw);
  std::string artifact;
  if (o.format == "csv")
    artifact = hqcli::divergence_to_csv(report.get());
  else if (o.format == "plot")
    artifact = hqcli::divergence_to_plot(report.get());
  else
    artifact = hqcli::divergence_to_json(report.get());
  double expected = 0, fitted = 0, intercept = 0, residual = 0;
  hq_divergence_fit(report.get(), &expected, &fitted, &intercept, &residual);
  const bool slope_ok = expected == 0.0
                            ? fitted == 0.0
                            : std::fabs(fitted - expected) <=
                                  kSlopeRelTol * std::fabs(expected);
  return emit(o, artifact, slope_ok && residual <= kFitResidualTol);
}

int run_lemma(const Options& o) {
  if (o.format == "plot")
    return usage_error("plot output is only defined for sharpness and divergence");
  hq_lemma* raw = nullptr;
  const hq_status st = hq_lemma_run(o.trials, o.dim, o.seed, &raw);
  if (st != HQ_OK) return api_error(st);
  const std::unique_ptr<hq_lemma, LemmaFree> run(raw);
  const double worst =
      std::max({hq_lemma_max_identity_gap(run.get()),
                hq_lemma_max_polarization_gap(run.get()),
                hq_lemma_max_equality_residual(run.get())});
  const bool ok = hq_lemma_passed(run.get()) == 1;
  std::cerr << "lemma1: " << (ok ? "pass" : "FAIL") << ", max residual "
            << worst << " over " << hq_lemma_trials(run.get())
            << " trials in dimension " << hq_lemma_dimension(run.get()) << '\n';
  const std::string artifact = o.format == "csv"
                                   ? hqcli::lemma_to_csv(run.get())
                                   : hqcli::lemma_to_json(run.get());
  return emit(o, artifact, ok);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"numerical verification of weighted-norm equalities: left side, "
               "main term, and remainder evaluated for catalogued "
               "test-function families"};
  app.set_version_flag("--version", hq_version());
  app.set_config("--config", "",
                 "read defaults from a key=value file (flags win)");
  app.add_option("--rel-tol", o.rel_tol,
                 "quadrature relative tolerance (env HARDYEQ_REL_TOL)")
      ->envname("HARDYEQ_REL_TOL")
      ->capture_default_str();
  app.add_option("--threshold", o.threshold,
                 "largest passing relative residual")
      ->capture_default_str();
  app.add_option("--format", o.format, "artifact format")
      ->check(CLI::IsMember({"json", "csv", "plot"}))
      ->capture_default_str();
  app.add_option("--output", o.output, "artifact path (default stdout)");
  app.require_subcommand(1);

  const auto add_theorem = [&](CLI::App* sub) {
    sub->add_option("--theorem", o.theorem,
                    "identity group: 1 gradient, 2 anchored, 3 averaging")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
  };
  const auto add_shape = [&](CLI::App* sub) {
    sub->add_option("-n,--dimension", o.n, "space dimension (theorems 1, 2)")
        ->capture_default_str();
    sub->add_option("-p,--exponent", o.p, "weight exponent (theorem 3)")
        ->capture_default_str();
    sub->add_option("--direction", o.direction,
                    "averaging direction (theorem 3)")
        ->check(CLI::IsMember({"forward", "backward"}))
        ->capture_default_str();
  };
  const auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "test-function family label");
    sub->add_option("--params", o.params, "family parameters");
  };

  CLI::App* verify =
      app.add_subcommand("verify", "evaluate one identity and report all terms");
  verify->fallthrough();
  add_theorem(verify);
  add_shape(verify);
  add_family(verify);
  verify->add_option("-R,--radius", o.anchor, "anchor radius (theorem 2)")
      ->capture_default_str();
  verify->add_option("--form", o.form,
                     "evaluation route (theorem 1: radial, product_rule, "
                     "full_gradient, dirichlet_split; theorem 2: direct, "
                     "half_power)");

  CLI::App* sharpness = app.add_subcommand(
      "sharpness", "quotient sweep along truncated extremizer approximants");
  sharpness->fallthrough();
  add_theorem(sharpness);
  add_shape(sharpness);
  sharpness->add_option("--truncations", o.truncations,
                        "truncation parameters, coarse to fine");

  CLI::App* divergence = app.add_subcommand(
      "divergence", "windowed extremizer-form integrals against log window");
  divergence->fallthrough();
  add_theorem(divergence);
  add_shape(divergence);
  divergence->add_option("--amplitude", o.amplitude, "extremizer amplitude")
      ->capture_default_str();
  divergence->add_option("--windows", o.windows,
                         "flat list of window lo/hi pairs");

  CLI::App* lemma = app.add_subcommand(
      "lemma1", "randomized inner-product decomposition check");
  lemma->fallthrough();
  lemma->add_option("--trials", o.trials, "number of random draws")
      ->capture_default_str();
  lemma->add_option("--dim", o.dim, "vector dimension")->capture_default_str();
  lemma->add_option("--seed", o.seed, "generator seed")->capture_default_str();

  CLI::App* r_sweep = app.add_subcommand(
      "r-sweep", "anchored identity across a list of anchor radii");
  r_sweep->fallthrough();
  add_family(r_sweep);
  r_sweep->add_option("-n,--dimension", o.n, "space dimension")
      ->capture_default_str();
  r_sweep->add_option("-R,--radii", o.radii, "anchor radii");
  r_sweep->add_option("--form", o.form, "evaluation route (direct, half_power)");

  CLI::App* all_cmd =
      app.add_subcommand("all", "run the full acceptance battery");
  all_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit cleanly; anything else is a usage error
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (app.got_subcommand(verify)) return run_verify(o);
  if (app.got_subcommand(sharpness)) return run_sharpness(o);
  if (app.got_subcommand(divergence)) return run_divergence(o);
  if (app.got_subcommand(lemma)) return run_lemma(o);
  if (app.got_subcommand(r_sweep)) return run_r_sweep(o);
  return hqcli::run_acceptance(std::cout) == 0 ? 0 : kExitNumerical;
}
