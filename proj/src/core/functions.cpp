#include "core/functions.hpp"

#include <cassert>

namespace hardyeq::fn {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;

double bump_kernel(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double bump_kernel_deriv(double t) {
  return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0;
}

// C^infty plateau window in a transformed coordinate: 0 up to lo-width,
// smooth rise, 1 on [lo, hi], smooth fall, 0 beyond hi+width.
struct Window {
  double lo, hi, width;

  double val(double t) const {
    if (t <= lo - width || t >= hi + width) return 0.0;
    if (t < lo) return smoothstep((t - lo + width) / width);
    if (t <= hi) return 1.0;
    return 1.0 - smoothstep((t - hi) / width);
  }

  double deriv(double t) const {
    if (t <= lo - width || t >= hi + width) return 0.0;
    if (t < lo) return smoothstep_deriv((t - lo + width) / width) / width;
    if (t <= hi) return 0.0;
    return -smoothstep_deriv((t - hi) / width) / width;
  }
};

}  // namespace

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = bump_kernel(t);
  const double b = bump_kernel(1.0 - t);
  return a / (a + b);
}

double smoothstep_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = bump_kernel(t);
  const double b = bump_kernel(1.0 - t);
  const double da = bump_kernel_deriv(t);
  const double db = bump_kernel_deriv(1.0 - t);
  return (da * b + a * db) / ((a + b) * (a + b));
}

double unit_sphere_area(int n) {
  assert(n >= 2);
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

AngularMode angular_constant(int n) { return {"constant", unit_sphere_area(n), 0.0}; }

AngularMode angular_first_harmonic(int n) {
  const double area = unit_sphere_area(n);
  return {"first_harmonic", area / n, (n - 1.0) * area / n};
}

AngularMode angular_cosine(int k) {
  assert(k >= 1);
  return {"cosine_" + std::to_string(k), kPi, k * k * kPi};
}

// ---- radial profiles -------------------------------------------------------

RadialProfile radial_gaussian() {
  RadialProfile p;
  p.name = "gaussian";
  p.phi = [](double r) { return std::isfinite(r) ? std::exp(-r * r) : 0.0; };
  // the exponential underflows to an exact zero near r = 27, far below where
  // -2r could overflow, so test it first
  p.dphi = [](double r) {
    if (!std::isfinite(r)) return 0.0;
    const double e = std::exp(-r * r);
    return e == 0.0 ? 0.0 : -2.0 * r * e;
  };
  p.decay = {0.0, std::numeric_limits<double>::infinity(), false};
  return p;
}

RadialProfile radial_exp() {
  RadialProfile p;
  p.name = "exp_decay";
  p.phi = [](double r) { return std::exp(-r); };
  p.dphi = [](double r) { return std::isfinite(r) ? -std::exp(-r) : 0.0; };
  p.decay = {0.0, std::numeric_limits<double>::infinity(), false};
  return p;
}

RadialProfile radial_bump(double a, double b) {
  assert(0.0 < a && a < b);
  RadialProfile p;
  p.name = "bump";
  p.phi = [a, b](double r) { return 1.0 - smoothstep((r - a) / (b - a)); };
  p.dphi = [a, b](double r) { return -smoothstep_deriv((r - a) / (b - a)) / (b - a); };
  p.decay = {0.0, b, false};
  p.kinks = {a, b};
  return p;
}

RadialProfile radial_power_cutoff(double beta) {
  assert(beta > 0.0);
  RadialProfile p;
  p.name = "power_cutoff";
  p.phi = [beta](double r) { return std::pow(1.0 + r * r, -0.5 * beta); };
  p.dphi = [beta](double r) {
    if (!std::isfinite(r)) return 0.0;
    const double w = std::pow(1.0 + r * r, -0.5 * beta - 1.0);
    return w == 0.0 ? 0.0 : -beta * r * w;
  };
  p.decay = {0.0, std::numeric_limits<double>::infinity(), true};
  return p;
}

RadialProfile radial_log_gauss() {
  RadialProfile p;
  p.name = "log_gauss";
  // exp(-log^2 r) is below the smallest subnormal once log^2 r > 745, and the
  // explicit zero keeps 1/r out of the derivative in that regime.
  p.phi = [](double r) {
    if (r <= 0.0 || !std::isfinite(r)) return 0.0;
    const double l = std::log(r);
    return l * l > 745.0 ? 0.0 : std::exp(-l * l);
  };
  p.dphi = [](double r) {
    if (r <= 0.0 || !std::isfinite(r)) return 0.0;
    const double l = std::log(r);
    return l * l > 745.0 ? 0.0 : -2.0 * l / r * std::exp(-l * l);
  };
  p.decay = {0.0, std::numeric_limits<double>::infinity(), false};
  return p;
}

RadialProfile radial_constant() {
  RadialProfile p;
  p.name = "constant";
  p.phi = [](double) { return 1.0; };
  p.dphi = [](double) { return 0.0; };
  p.decay = {0.0, std::numeric_limits<double>::infinity(), true};
  return p;
}

RadialProfile radial_extremizer_window(int n, double eps) {
  assert(n >= 3 && eps > 0.0 && eps < 0.25);
  const double c = 0.5 * (n - 2.0);
  const Window w{std::log(2.0 * eps), -std::log(2.0 * eps), kLog2};
  RadialProfile p;
  p.name = "extremizer_window";
  p.phi = [w, c](double r) {
    if (r <= 0.0 || !std::isfinite(r)) return 0.0;
    const double t = std::log(r);
    const double wv = w.val(t);
    return wv == 0.0 ? 0.0 : wv * std::pow(r, -c);
  };
  p.dphi = [w, c](double r) {
    if (r <= 0.0 || !std::isfinite(r)) return 0.0;
    const double t = std::log(r);
    const double wv = w.val(t), wd = w.deriv(t);
    if (wv == 0.0 && wd == 0.0) return 0.0;
    return std::pow(r, -c - 1.0) * (wd - c * wv);
  };
  p.decay = {eps, 1.0 / eps, false};
  p.kinks = {eps, 2.0 * eps, 0.5 / eps, 1.0 / eps};
  return p;
}

RadialProfile radial_extremizer_sweep(int n, double T) {
  assert(n >= 3 && T > 0.0 && T < 690.0);
  const double c = 0.5 * (n - 2.0);
  const Window w{-0.5 * T, 0.5 * T, 0.5 * T};
  RadialProfile p;
  p.name = "extremizer_sweep";
  p.phi = [w, c](double r) {
    if (r <= 0.0 || !std::isfinite(r)) return 0.0;
    const double wv = w.val(std::log(r));
    return wv == 0.0 ? 0.0 : wv * std::pow(r, -c);
  };
  p.dphi = [w, c](double r) {
    if (r <= 0.0 || !std::isfinite(r)) return 0.0;
    const double t = std::log(r);
    const double wv = w.val(t), wd = w.deriv(t);
    if (wv == 0.0 && wd == 0.0) return 0.0;
    return std::pow(r, -c - 1.0) * (wd - c * wv);
  };
  p.decay = {std::exp(-T), std::exp(T), false};
  p.kinks = {std::exp(-T), std::exp(-0.5 * T), std::exp(0.5 * T), std::exp(T)};
  return p;
}

RadialProfile log_extremizer_window(double eps, double R) {
  assert(eps > 1.0 / 690.0 && eps < 0.25 && R > 0.0);
  const Window w{std::log(2.0 * eps), -std::log(2.0 * eps), kLog2};
  // sqrt(u) * window(log u) in u = |log(R/r)|, identically zero for u outside
  // [eps, 1/eps] — in particular in a neighbourhood of r = R.
  auto shape = [w](double u) {
    if (u <= 0.0 || !std::isfinite(u)) return 0.0;
    const double wv = w.val(std::log(u));
    return wv == 0.0 ? 0.0 : std::sqrt(u) * wv;
  };
  auto shape_deriv = [w](double u) {
    if (u <= 0.0 || !std::isfinite(u)) return 0.0;
    const double v = std::log(u);
    const double wv = w.val(v), wd = w.deriv(v);
    if (wv == 0.0 && wd == 0.0) return 0.0;
    return (0.5 * wv + wd) / std::sqrt(u);
  };
  RadialProfile p;
  p.name = "log_extremizer_window";
  p.phi = [shape, R](double r) {
    if (r <= 0.0 || !std::isfinite(r)) return 0.0;
    return shape(std::fabs(std::log(R / r)));
  };
  p.dphi = [shape_deriv, R](double r) {
    if (r <= 0.0 || !std::isfinite(r)) return 0.0;
    const double u = std::log(R / r);
    // d/dr of shape(|log(R/r)|): the inner side carries du/dr = -1/r.
    return u > 0.0 ? -shape_deriv(u) / r : shape_deriv(-u) / r;
  };
  p.decay = {R * std::exp(-1.0 / eps), R * std::exp(1.0 / eps), false};
  for (double s : {1.0 / eps, 0.5 / eps, 2.0 * eps, eps})
    p.kinks.push_back(R * std::exp(-s));
  p.kinks.push_back(R);
  for (double s : {eps, 2.0 * eps, 0.5 / eps, 1.0 / eps})
    p.kinks.push_back(R * std::exp(s));
  return p;
}

// ---- line profiles ---------------------------------------------------------

LineProfile line_exp() {
  LineProfile p;
  p.name = "exp_decay";
  p.f = [](double x) { return std::exp(-x); };
  p.F = [](double x) { return -std::expm1(-x); };
  p.G = [](double x) { return std::exp(-x); };
  p.decay = {0.0, std::numeric_limits<double>::infinity(), false};
  return p;
}

LineProfile line_xsq_exp() {
  LineProfile p;
  p.name = "xsq_exp";
  // evaluate the exponential first everywhere below: it underflows to an
  // exact zero long before the polynomial factor can overflow
  p.f = [](double x) {
    if (!std::isfinite(x)) return 0.0;
    const double e = std::exp(-x);
    return e == 0.0 ? 0.0 : x * x * e;
  };
  // int_0^x t^2 e^-t dt = 2 - e^-x (x^2 + 2x + 2); the closed form loses all
  // digits near 0, where the alternating series converges in a few terms.
  p.F = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x < 0.5) {
      double sum = 0.0, term = x * x * x;  // k = 0 term times (k+3)
      for (int k = 0; k < 24; ++k) {
        sum += term / (k + 3.0);
        term *= -x / (k + 1.0);
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
      }
      return sum;
    }
    const double e = std::isfinite(x) ? std::exp(-x) : 0.0;
    if (e == 0.0) return 2.0;
    return 2.0 - e * (x * x + 2.0 * x + 2.0);
  };
  p.G = [](double x) {
    const double e = std::isfinite(x) ? std::exp(-x) : 0.0;
    return e == 0.0 ? 0.0 : e * (x * x + 2.0 * x + 2.0);
  };
  p.decay = {0.0, std::numeric_limits<double>::infinity(), false};
  return p;
}

LineProfile line_cube_gauss() {
  LineProfile p;
  p.name = "cube_gauss";
  p.f = [](double x) {
    if (!std::isfinite(x)) return 0.0;
    const double e = std::exp(-x * x);
    return e == 0.0 ? 0.0 : x * x * x * e;
  };
  p.F = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x < 0.7) {
      const double q = x * x;
      double sum = 0.0, term = q * q;  // k = 0 term times (2k+4)
      for (int k = 0; k < 24; ++k) {
        sum += term / (2.0 * k + 4.0);
        term *= -q / (k + 1.0);
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
      }
      return sum;
    }
    const double e = std::isfinite(x) ? std::exp(-x * x) : 0.0;
    if (e == 0.0) return 0.5;
    return 0.5 * (1.0 - e * (1.0 + x * x));
  };
  p.G = [](double x) {
    const double e = std::isfinite(x) ? std::exp(-x * x) : 0.0;
    return e == 0.0 ? 0.0 : 0.5 * e * (1.0 + x * x);
  };
  p.decay = {0.0, std::numeric_limits<double>::infinity(), false};
  return p;
}

LineProfile line_step(double a) {
  assert(a > 0.0);
  LineProfile p;
  p.name = "step";
  p.f = [a](double x) {
    if (x <= 0.0 || !std::isfinite(x)) return 0.0;
    return smoothstep_deriv((std::log(x) - std::log(a)) / kLog2) / (x * kLog2);
  };
  p.F = [a](double x) {
    if (x <= 0.0) return 0.0;
    if (!std::isfinite(x)) return 1.0;
    return smoothstep((std::log(x) - std::log(a)) / kLog2);
  };
  p.G = [a](double x) {
    if (x <= 0.0) return 1.0;
    if (!std::isfinite(x)) return 0.0;
    return 1.0 - smoothstep((std::log(x) - std::log(a)) / kLog2);
  };
  p.decay = {a, 2.0 * a, false};
  p.kinks = {a, 2.0 * a};
  return p;
}

namespace {

// Shared construction: F = shape(x) * window(log x) in closed form, f = F',
// G = -F (total mass zero since F vanishes at both ends).  shape is a pure
// power x^q, so both factors and the derivative stay elementary.
LineProfile windowed_primitive(std::string name, double q, const Window& w,
                               std::vector<double> kinks_log) {
  LineProfile p;
  p.name = std::move(name);
  p.F = [q, w](double x) {
    if (x <= 0.0 || !std::isfinite(x)) return 0.0;
    const double wv = w.val(std::log(x));
    return wv == 0.0 ? 0.0 : wv * std::pow(x, q);
  };
  p.f = [q, w](double x) {
    if (x <= 0.0 || !std::isfinite(x)) return 0.0;
    const double t = std::log(x);
    const double wv = w.val(t), wd = w.deriv(t);
    if (wv == 0.0 && wd == 0.0) return 0.0;
    return std::pow(x, q - 1.0) * (q * wv + wd);
  };
  p.G = [F = p.F](double x) { return -F(x); };
  p.decay = {std::exp(w.lo - w.width), std::exp(w.hi + w.width), false};
  for (double t : kinks_log) p.kinks.push_back(std::exp(t));
  return p;
}

}  // namespace

LineProfile line_power_window(double alpha, double a, double b) {
  assert(alpha != -1.0 && 0.0 < a && 2.0 * a <= b);
  const Window w{std::log(a), std::log(b), kLog2};
  LineProfile p = windowed_primitive(
      "power_window", alpha + 1.0, w,
      {w.lo - w.width, w.lo, w.hi, w.hi + w.width});
  // scale F to x^{alpha+1}/(alpha+1) so that f = x^alpha on the plateau
  const double scale = 1.0 / (alpha + 1.0);
  p.F = [F = p.F, scale](double x) { return scale * F(x); };
  p.f = [f = p.f, scale](double x) { return scale * f(x); };
  p.G = [G = p.G, scale](double x) { return scale * G(x); };
  return p;
}

LineProfile line_extremizer_window_forward(double p_exp, double eps) {
  assert(p_exp > 0.0 && eps > 0.0 && eps < 0.25);
  const Window w{std::log(2.0 * eps), -std::log(2.0 * eps), kLog2};
  LineProfile p = windowed_primitive(
      "extremizer_window_forward", 0.5 * p_exp, w,
      {w.lo - w.width, w.lo, w.hi, w.hi + w.width});
  return p;
}

namespace {

// x -> 1/x carries the forward operator family to the backward one:
// if g(x) = f(1/x) / x^2 then int_x^inf g = F(1/x) and int_0^x g = G(1/x).
LineProfile inverted(const LineProfile& fwd, std::string name) {
  LineProfile p;
  p.name = std::move(name);
  p.f = [f = fwd.f](double x) {
    if (x <= 0.0 || !std::isfinite(x)) return 0.0;
    const double y = f(1.0 / x);
    return y == 0.0 ? 0.0 : y / (x * x);
  };
  p.F = [G = fwd.G](double x) { return x > 0.0 ? G(1.0 / x) : 0.0; };
  p.G = [F = fwd.F](double x) {
    return x > 0.0 ? F(1.0 / x) : F(std::numeric_limits<double>::infinity());
  };
  p.decay = {1.0 / fwd.decay.support_hi, 1.0 / fwd.decay.support_lo,
             fwd.decay.power_tail};
  for (double k : fwd.kinks) p.kinks.push_back(1.0 / k);
  return p;
}

}  // namespace

LineProfile line_extremizer_window_backward(double p_exp, double eps) {
  return inverted(line_extremizer_window_forward(p_exp, eps),
                  "extremizer_window_backward");
}

LineProfile line_extremizer_sweep_forward(double p_exp, double T) {
  assert(p_exp > 0.0 && T > 0.0 && T < 690.0);
  const Window w{-0.5 * T, 0.5 * T, 0.5 * T};
  return windowed_primitive("extremizer_sweep_forward", 0.5 * p_exp, w,
                            {-T, -0.5 * T, 0.5 * T, T});
}

LineProfile line_extremizer_sweep_backward(double p_exp, double T) {
  return inverted(line_extremizer_sweep_forward(p_exp, T),
                  "extremizer_sweep_backward");
}

RadialProfile scaled(const RadialProfile& p, double lambda) {
  assert(lambda > 0.0 && std::isfinite(lambda));
  RadialProfile q;
  q.name = p.name + "_scaled";
  q.phi = [phi = p.phi, lambda](double r) { return phi(lambda * r); };
  q.dphi = [dphi = p.dphi, lambda](double r) { return lambda * dphi(lambda * r); };
  q.decay = {p.decay.support_lo / lambda, p.decay.support_hi / lambda,
             p.decay.power_tail};
  for (double k : p.kinks) q.kinks.push_back(k / lambda);
  return q;
}

LineProfile inverted(const LineProfile& p) { return inverted(p, p.name + "_inverted"); }

LineProfile scaled(const LineProfile& p, double lambda) {
  assert(lambda > 0.0 && std::isfinite(lambda));
  LineProfile q;
  q.name = p.name + "_scaled";
  q.f = [f = p.f, lambda](double x) { return f(lambda * x); };
  // int_0^x f(lambda t) dt = F(lambda x) / lambda, and likewise for the tail
  q.F = [F = p.F, lambda](double x) { return F(lambda * x) / lambda; };
  q.G = [G = p.G, lambda](double x) { return G(lambda * x) / lambda; };
  q.decay = {p.decay.support_lo / lambda, p.decay.support_hi / lambda,
             p.decay.power_tail};
  for (double k : p.kinks) q.kinks.push_back(k / lambda);
  return q;
}

}  // namespace hardyeq::fn
