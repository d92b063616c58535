#include "report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace hqcli {
namespace {

using ordered_json = nlohmann::ordered_json;

// shortest round-trip decimal; shared by the CSV and plot writers (the JSON
// library applies the same shortest-representation rule internally)
std::string num(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

ordered_json report_to_object(const hq_report* report) {
  ordered_json params = ordered_json::object();
  params["profile"] = hq_report_profile(report);
  if (*hq_report_mode(report)) params["mode"] = hq_report_mode(report);
  if (hq_report_dimension(report) > 0)
    params["n"] = hq_report_dimension(report);
  if (hq_report_anchor(report) > 0.0) params["R"] = hq_report_anchor(report);
  if (hq_report_exponent(report) > 0.0)
    params["p"] = hq_report_exponent(report);

  hq_report_terms t{};
  hq_report_read(report, &t);
  ordered_json j;
  j["identity_id"] = hq_report_identity(report);
  j["params"] = std::move(params);
  j["lhs"] = t.lhs;
  j["main_term"] = t.main_term;
  j["remainder_term"] = t.remainder_term;
  j["cross_term"] = t.cross_term;
  j["residual_abs"] = t.residual_abs;
  j["residual_rel"] = t.residual_rel;
  j["quad_error_budget"] = t.quad_error_budget;
  j["passed"] = hq_report_passed(report) != 0;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string reports_to_json(const std::vector<const hq_report*>& reports) {
  ordered_json arr = ordered_json::array();
  for (const hq_report* r : reports) arr.push_back(report_to_object(r));
  return dump(arr);
}

std::string reports_to_csv(const std::vector<const hq_report*>& reports) {
  std::string out =
      "identity_id,profile,mode,n,R,p,lhs,main_term,remainder_term,"
      "cross_term,residual_abs,residual_rel,quad_error_budget,passed\n";
  for (const hq_report* r : reports) {
    hq_report_terms t{};
    hq_report_read(r, &t);
    out += hq_report_identity(r);
    out += ',';
    out += hq_report_profile(r);
    out += ',';
    out += hq_report_mode(r);
    out += ',';
    if (hq_report_dimension(r) > 0) out += std::to_string(hq_report_dimension(r));
    out += ',';
    if (hq_report_anchor(r) > 0.0) out += num(hq_report_anchor(r));
    out += ',';
    if (hq_report_exponent(r) > 0.0) out += num(hq_report_exponent(r));
    out += ',';
    out += num(t.lhs) + ',' + num(t.main_term) + ',' + num(t.remainder_term) +
           ',' + num(t.cross_term) + ',' + num(t.residual_abs) + ',' +
           num(t.residual_rel) + ',' + num(t.quad_error_budget) + ',';
    out += hq_report_passed(r) ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string sweep_to_json(const hq_sweep* sweep) {
  ordered_json points = ordered_json::array();
  for (size_t i = 0; i < hq_sweep_size(sweep); ++i) {
    double eps = 0, quotient = 0, allowance = 0;
    hq_sweep_point(sweep, i, &eps, &quotient, &allowance);
    ordered_json pt;
    pt["eps"] = eps;
    pt["quotient"] = quotient;
    pt["allowance"] = allowance;
    points.push_back(std::move(pt));
  }
  ordered_json j;
  j["identity_id"] = hq_sweep_identity(sweep);
  j["family_label"] = hq_sweep_family(sweep);
  j["sharp_value"] = hq_sweep_sharp_value(sweep);
  j["points"] = std::move(points);
  j["attained_fraction"] = hq_sweep_attained_fraction(sweep);
  j["monotone"] = hq_sweep_monotone(sweep) != 0;
  j["below_sharp"] = hq_sweep_below_sharp(sweep) != 0;
  return dump(ordered_json::array({std::move(j)}));
}

std::string sweep_to_csv(const hq_sweep* sweep) {
  std::string out =
      "identity_id,family_label,sharp_value,eps,quotient,allowance,"
      "attained_fraction,monotone,below_sharp\n";
  const std::string prefix = std::string(hq_sweep_identity(sweep)) + ',' +
                             hq_sweep_family(sweep) + ',' +
                             num(hq_sweep_sharp_value(sweep)) + ',';
  const std::string suffix =
      ',' + num(hq_sweep_attained_fraction(sweep)) + ',' +
      (hq_sweep_monotone(sweep) ? "true" : "false") + ',' +
      (hq_sweep_below_sharp(sweep) ? "true" : "false") + '\n';
  for (size_t i = 0; i < hq_sweep_size(sweep); ++i) {
    double eps = 0, quotient = 0, allowance = 0;
    hq_sweep_point(sweep, i, &eps, &quotient, &allowance);
    out += prefix + num(eps) + ',' + num(quotient) + ',' + num(allowance) +
           suffix;
  }
  return out;
}

std::string sweep_to_plot(const hq_sweep* sweep) {
  std::string out;
  for (size_t i = 0; i < hq_sweep_size(sweep); ++i) {
    double eps = 0, quotient = 0, allowance = 0;
    hq_sweep_point(sweep, i, &eps, &quotient, &allowance);
    out += num(std::log(eps)) + ' ' + num(quotient) + '\n';
  }
  return out;
}

std::string divergence_to_json(const hq_divergence* report) {
  double expected = 0, fitted = 0, intercept = 0, residual = 0;
  hq_divergence_fit(report, &expected, &fitted, &intercept, &residual);
  ordered_json points = ordered_json::array();
  for (size_t i = 0; i < hq_divergence_size(report); ++i) {
    double lo = 0, hi = 0, ratio = 0, integral = 0;
    hq_divergence_point(report, i, &lo, &hi, &ratio, &integral);
    ordered_json pt;
    pt["lo"] = lo;
    pt["hi"] = hi;
    pt["log_ratio"] = ratio;
    pt["integral"] = integral;
    points.push_back(std::move(pt));
  }
  ordered_json j;
  j["identity_id"] = hq_divergence_identity(report);
  j["amplitude"] = hq_divergence_amplitude(report);
  j["expected_slope"] = expected;
  j["fitted_slope"] = fitted;
  j["fit_intercept"] = intercept;
  j["fit_residual"] = residual;
  j["points"] = std::move(points);
  return dump(ordered_json::array({std::move(j)}));
}

std::string divergence_to_csv(const hq_divergence* report) {
  double expected = 0, fitted = 0, intercept = 0, residual = 0;
  hq_divergence_fit(report, &expected, &fitted, &intercept, &residual);
  std::string out =
      "identity_id,amplitude,expected_slope,fitted_slope,fit_intercept,"
      "fit_residual,lo,hi,log_ratio,integral\n";
  const std::string prefix = std::string(hq_divergence_identity(report)) +
                             ',' + num(hq_divergence_amplitude(report)) + ',' +
                             num(expected) + ',' + num(fitted) + ',' +
                             num(intercept) + ',' + num(residual) + ',';
  for (size_t i = 0; i < hq_divergence_size(report); ++i) {
    double lo = 0, hi = 0, ratio = 0, integral = 0;
    hq_divergence_point(report, i, &lo, &hi, &ratio, &integral);
    out += prefix + num(lo) + ',' + num(hi) + ',' + num(ratio) + ',' +
           num(integral) + '\n';
  }
  return out;
}

std::string divergence_to_plot(const hq_divergence* report) {
  std::string out;
  for (size_t i = 0; i < hq_divergence_size(report); ++i) {
    double lo = 0, hi = 0, ratio = 0, integral = 0;
    hq_divergence_point(report, i, &lo, &hi, &ratio, &integral);
    out += num(ratio) + ' ' + num(integral) + '\n';
  }
  return out;
}

std::string lemma_to_json(const hq_lemma* run) {
  ordered_json j;
  j["trials"] = hq_lemma_trials(run);
  j["dim"] = hq_lemma_dimension(run);
  j["max_identity_gap"] = hq_lemma_max_identity_gap(run);
  j["max_polarization_gap"] = hq_lemma_max_polarization_gap(run);
  j["max_equality_residual"] = hq_lemma_max_equality_residual(run);
  j["passed"] = hq_lemma_passed(run) != 0;
  return dump(ordered_json::array({std::move(j)}));
}

std::string lemma_to_csv(const hq_lemma* run) {
  std::string out =
      "trials,dim,max_identity_gap,max_polarization_gap,"
      "max_equality_residual,passed\n";
  out += std::to_string(hq_lemma_trials(run)) + ',' +
         std::to_string(hq_lemma_dimension(run)) + ',' +
         num(hq_lemma_max_identity_gap(run)) + ',' +
         num(hq_lemma_max_polarization_gap(run)) + ',' +
         num(hq_lemma_max_equality_residual(run)) + ',' +
         (hq_lemma_passed(run) ? "true" : "false") + '\n';
  return out;
}

bool write_artifact(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  out << bytes;
  out.close();
  if (!out) {
    std::cerr << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace hqcli
