#include "core/identities.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hardyeq::id {
namespace {

using fn::AngularMode;
using fn::Decay;
using fn::LineProfile;
using fn::RadialProfile;
using quad::DecayHint;
using quad::Integrand;
using quad::QuadResult;

// 0 * inf must never reach an actual multiplication: whenever one factor can
// vanish while its partner overflows (powers of r against decaying profiles),
// the product goes through here.
double safe_prod(double a, double b) {
  return (a == 0.0 || b == 0.0) ? 0.0 : a * b;
}

double sq(double x) { return x * x; }

DecayHint hint_from(const Decay& d) {
  if (d.compact()) return DecayHint::compact(d.support_lo, d.support_hi);
  return d.power_tail ? DecayHint::power() : DecayHint::exponential();
}

struct Term {
  double value = 0.0;
  double err = 0.0;
};

Term line_integral(std::function<double(double)> g, const Decay& d,
                   std::vector<double> singular, double rel_tol) {
  Integrand in;
  in.eval = std::move(g);
  in.singular_points = std::move(singular);
  const QuadResult r = quad::integrate_halfline(in, rel_tol, hint_from(d));
  return {r.value, r.error_estimate};
}

IdentityReport finish(IdentityReport rep, double rel_tol, bool plus_split = false) {
  const double recombined =
      plus_split ? rep.main_term + rep.remainder_term
                 : rep.main_term - rep.remainder_term;
  rep.residual_abs = std::fabs(rep.lhs - recombined);
  rep.residual_rel = rep.residual_abs / std::max(1.0, std::fabs(rep.main_term));
  rep.passed = rep.residual_rel <= kResidualFactor * rel_tol;
  return rep;
}

// ---- gradient identity (n >= 3) --------------------------------------------

struct T1Pieces {
  // half-power factors: squaring the assembled product keeps every
  // intermediate inside the representable range of the profile's support
  std::function<double(double)> lhs_half, main_half;
  const RadialProfile* pr;
  double c0;
};

T1Pieces t1_pieces(const RadialProfile& pr, int n) {
  const double el = 0.5 * (n - 3.0), em = 0.5 * (n - 1.0);
  T1Pieces p;
  p.pr = &pr;
  p.c0 = 0.5 * (n - 2.0);
  p.lhs_half = [&pr, el](double r) {
    return safe_prod(pr.phi(r), std::pow(r, el));
  };
  p.main_half = [&pr, em](double r) {
    return safe_prod(pr.dphi(r), std::pow(r, em));
  };
  return p;
}

}  // namespace

IdentityReport eval_T1(const RadialProfile& profile, int n, const AngularMode& mode,
                       T1Form form, double rel_tol) {
  if (n < 3) throw std::invalid_argument("gradient identity requires n >= 3");
  const double A = mode.mass, B = mode.grad_mass;
  const T1Pieces pc = t1_pieces(profile, n);
  const double c0 = pc.c0;
  const Decay& d = profile.decay;
  const std::vector<double>& s = profile.kinks;

  auto lhs_d = [&pc](double r) { return sq(pc.lhs_half(r)); };
  auto main_d = [&pc](double r) { return sq(pc.main_half(r)); };
  auto rem_direct = [&pc, c0](double r) {
    return sq(pc.main_half(r) + c0 * pc.lhs_half(r));
  };
  // product-rule form: w' = (r^c0 phi)' assembled first, then restored to the
  // full weight by sqrt(r) — pointwise equal to rem_direct, different tree
  auto rem_product = [&profile, c0](double r) {
    const double wp = safe_prod(profile.dphi(r), std::pow(r, c0)) +
                      c0 * safe_prod(profile.phi(r), std::pow(r, c0 - 1.0));
    return sq(safe_prod(wp, std::sqrt(r)));
  };

  const Term lhs_core = line_integral(lhs_d, d, s, rel_tol);
  const Term cross_core = line_integral(
      [&pc](double r) { return pc.lhs_half(r) * pc.main_half(r); }, d, s, rel_tol);

  IdentityReport rep;
  rep.profile = profile.name;
  rep.mode = mode.name;
  rep.n = n;
  rep.cross_term = -2.0 / (n - 2.0) * A * cross_core.value;
  double budget = c0 * c0 * A * lhs_core.err + 2.0 / (n - 2.0) * A * cross_core.err;

  switch (form) {
    case T1Form::radial:
    case T1Form::radial_product_rule: {
      const Term main = line_integral(main_d, d, s, rel_tol);
      const Term rem = line_integral(
          form == T1Form::radial ? std::function<double(double)>(rem_direct)
                                 : std::function<double(double)>(rem_product),
          d, s, rel_tol);
      rep.identity_id = form == T1Form::radial ? "T1_eq15" : "T1_eq16";
      rep.lhs = c0 * c0 * A * lhs_core.value;
      rep.main_term = A * main.value;
      rep.remainder_term = A * rem.value;
      budget += A * (main.err + rem.err);
      break;
    }
    case T1Form::full_gradient: {
      // |grad f|^2 and the full-gradient remainder each combine the radial and
      // spherical densities inside one quadrature
      const Term main = line_integral(
          [&, A, B](double r) { return A * main_d(r) + B * lhs_d(r); }, d, s,
          rel_tol);
      const Term rem = line_integral(
          [&, A, B](double r) { return A * rem_direct(r) + B * lhs_d(r); }, d, s,
          rel_tol);
      rep.identity_id = "T1_eq21";
      rep.lhs = c0 * c0 * A * lhs_core.value;
      rep.main_term = main.value;
      rep.remainder_term = rem.value;
      budget += main.err + rem.err;
      break;
    }
    case T1Form::dirichlet_split: {
      const Term grad = line_integral(
          [&, A, B](double r) { return A * main_d(r) + B * lhs_d(r); }, d, s,
          rel_tol);
      const Term radial = line_integral([&, A](double r) { return A * main_d(r); },
                                        d, s, rel_tol);
      const Term spherical = line_integral([&, B](double r) { return B * lhs_d(r); },
                                           d, s, rel_tol);
      rep.identity_id = "T1_dirichlet_decomp";
      rep.lhs = grad.value;
      rep.main_term = radial.value;
      rep.remainder_term = spherical.value;
      budget += grad.err + radial.err + spherical.err;
      rep.quad_error_budget = budget;
      return finish(std::move(rep), rel_tol, /*plus_split=*/true);
    }
  }
  rep.quad_error_budget = budget;
  return finish(std::move(rep), rel_tol);
}

// ---- logarithmic identity (n >= 2) -----------------------------------------

namespace {

// One side of the split at R, parameterised by u = |log(R/r)| > 0.  The
// substitution removes the Jacobian entirely: every norm becomes a plain
// integral over u, and r = R e^{-su} may underflow to exactly 0 (or overflow
// to the profile's vanishing tail) without leaving the representable range.
struct T2Side {
  const RadialProfile* pr;
  double R;
  double s;  // +1: inside the anchor radius, -1: outside
  double phiR;

  double r_of(double u) const { return R * std::exp(-s * u); }

  double rdphi(double u) const {
    const double r = r_of(u);
    return (r > 0.0 && std::isfinite(r)) ? pr->dphi(r) * r : 0.0;
  }

  // (phi(r) - phi(R)) / log(R/r); the difference loses all digits as u -> 0,
  // where a midpoint-derivative form of the same quantity takes over.
  double ratio(double u) const {
    if (u < 1e-4) {
      const double mid = R * std::exp(-0.5 * s * u);
      return pr->dphi(mid) * R * std::expm1(-s * u) / (s * u);
    }
    return (pr->phi(r_of(u)) - phiR) / (s * u);
  }

  double ddelta_du(double u) const { return -s * rdphi(u); }
};

Term t2_ray(std::function<double(double)> h, std::vector<double> splits,
            double rel_tol) {
  Integrand in;
  in.eval = std::move(h);
  in.singular_points = std::move(splits);
  const QuadResult r = quad::integrate_ray(in, rel_tol);
  return {r.value, r.error_estimate};
}

std::vector<double> t2_splits(const RadialProfile& pr, double R, double s) {
  std::vector<double> out;
  for (double k : pr.kinks) {
    if (k <= 0.0 || !std::isfinite(k) || k == R) continue;
    const double u = s > 0 ? std::log(R / k) : std::log(k / R);
    if (u > 0.0) out.push_back(u);
  }
  return out;
}

}  // namespace

IdentityReport eval_T2(const RadialProfile& profile, int n, double R,
                       const AngularMode& mode, T2Form form, double rel_tol) {
  if (n < 2) throw std::invalid_argument("logarithmic identity requires n >= 2");
  if (!(R > 0.0) || !std::isfinite(R))
    throw std::invalid_argument("anchor radius must be positive and finite");
  const double A = mode.mass;
  const double phiR = profile.phi(R);

  IdentityReport rep;
  rep.identity_id = form == T2Form::direct ? "T2_eq19" : "T2_eq110";
  rep.profile = profile.name;
  rep.mode = mode.name;
  rep.n = n;
  rep.R = R;

  double lhs_core = 0, main = 0, rem = 0, cross = 0, budget = 0;
  for (double s : {1.0, -1.0}) {
    const T2Side side{&profile, R, s, phiR};
    const std::vector<double> splits = t2_splits(profile, R, s);

    const Term l = t2_ray([side](double u) { return sq(side.ratio(u)); }, splits,
                          rel_tol);
    const Term m = t2_ray([side](double u) { return sq(side.rdphi(u)); }, splits,
                          rel_tol);
    Term r;
    if (form == T2Form::direct) {
      r = t2_ray(
          [side](double u) { return sq(side.rdphi(u) + 0.5 * side.ratio(u)); },
          splits, rel_tol);
    } else {
      // |log(R/r)|^{1/2} materialised: differentiate delta/sqrt(u) in u and
      // restore the half power afterwards
      r = t2_ray(
          [side](double u) {
            const double half = std::sqrt(u);
            const double w = side.s * side.ratio(u) * half;  // delta / sqrt(u)
            const double dw = side.ddelta_du(u) / half - 0.5 * w / u;
            return sq(half * dw);
          },
          splits, rel_tol);
    }
    const Term x = t2_ray(
        [side](double u) { return -2.0 * side.ratio(u) * side.rdphi(u); }, splits,
        rel_tol);
    lhs_core += l.value;
    main += m.value;
    rem += r.value;
    cross += x.value;
    budget += A * (0.25 * l.err + m.err + r.err + x.err);
  }

  rep.lhs = 0.25 * A * lhs_core;
  rep.main_term = A * main;
  rep.remainder_term = A * rem;
  rep.cross_term = A * cross;
  rep.quad_error_budget = budget;
  return finish(std::move(rep), rel_tol);
}

T2SideBreakdown eval_T2_sides(const RadialProfile& profile, double R,
                              double rel_tol) {
  if (!(R > 0.0) || !std::isfinite(R))
    throw std::invalid_argument("anchor radius must be positive and finite");
  const double phiR = profile.phi(R);
  T2SideBreakdown out;
  for (double s : {1.0, -1.0}) {
    const T2Side side{&profile, R, s, phiR};
    const std::vector<double> splits = t2_splits(profile, R, s);
    const double l =
        t2_ray([side](double u) { return sq(side.ratio(u)); }, splits, rel_tol)
            .value;
    const double m =
        t2_ray([side](double u) { return sq(side.rdphi(u)); }, splits, rel_tol)
            .value;
    const double r = t2_ray(
        [side](double u) { return sq(side.rdphi(u) + 0.5 * side.ratio(u)); },
        splits, rel_tol).value;
    (s > 0 ? out.lhs_core_inner : out.lhs_core_outer) = l;
    (s > 0 ? out.main_inner : out.main_outer) = m;
    (s > 0 ? out.remainder_inner : out.remainder_outer) = r;
  }
  return out;
}

bool corollary_inequality_holds(const IdentityReport& report) {
  return report.lhs <= report.main_term + report.quad_error_budget;
}

// ---- integral-operator identities ------------------------------------------

namespace {

struct T3Setup {
  std::function<double(double)> edge_half;   // F x^{-(p+1)/2}  or  G x^{(p-1)/2}
  std::function<double(double)> inner_half;  // f x^{(1-p)/2}   or  f x^{(p+1)/2}
  Decay edge_decay, inner_decay;
  std::vector<double> singular;
  double p = 0.0;
};

T3Setup t3_forward_setup(const LineProfile& lp, double p) {
  T3Setup s;
  s.p = p;
  const double ee = -0.5 * (p + 1.0), ei = 0.5 * (1.0 - p);
  s.edge_half = [&lp, ee](double x) {
    return safe_prod(lp.F(x), std::pow(x, ee));
  };
  s.inner_half = [&lp, ei](double x) {
    return safe_prod(lp.f(x), std::pow(x, ei));
  };
  s.inner_decay = lp.decay;
  // F levels off at the total mass, so its weighted square keeps a power tail
  // unless the mass vanishes identically
  const double mass = lp.F(1.0) + lp.G(1.0);
  s.edge_decay = lp.decay;
  if (mass != 0.0) {
    s.edge_decay.support_hi = std::numeric_limits<double>::infinity();
    s.edge_decay.power_tail = true;
  }
  s.singular = lp.kinks;
  return s;
}

T3Setup t3_backward_setup(const LineProfile& lp, double p) {
  T3Setup s;
  s.p = p;
  const double ee = 0.5 * (p - 1.0), ei = 0.5 * (p + 1.0);
  s.edge_half = [&lp, ee](double x) {
    return safe_prod(lp.G(x), std::pow(x, ee));
  };
  s.inner_half = [&lp, ei](double x) {
    return safe_prod(lp.f(x), std::pow(x, ei));
  };
  s.inner_decay = lp.decay;
  // G carries the total mass all the way down to 0; the weight x^{p-1} is
  // singular there for p < 1, so 0 is routed through the log-substitution path
  s.edge_decay = lp.decay;
  s.edge_decay.support_lo = 0.0;
  s.singular = lp.kinks;
  s.singular.push_back(0.0);
  return s;
}

IdentityReport eval_T3(const LineProfile& lp, double p, bool forward,
                       double rel_tol) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("weight exponent must be positive and finite");
  const T3Setup s = forward ? t3_forward_setup(lp, p) : t3_backward_setup(lp, p);

  const Term core = line_integral([&s](double x) { return sq(s.edge_half(x)); },
                                  s.edge_decay, s.singular, rel_tol);
  const Term main = line_integral([&s](double x) { return sq(s.inner_half(x)); },
                                  s.inner_decay, s.singular, rel_tol);
  const Term rem = line_integral(
      [&s, p](double x) { return sq(s.inner_half(x) - 0.5 * p * s.edge_half(x)); },
      s.edge_decay, s.singular, rel_tol);
  const Term cross = line_integral(
      [&s](double x) { return s.edge_half(x) * s.inner_half(x); }, s.inner_decay,
      s.singular, rel_tol);

  IdentityReport rep;
  rep.identity_id = forward ? "T3_eq113" : "T3_eq117";
  rep.profile = lp.name;
  rep.p = p;
  rep.lhs = 0.25 * p * p * core.value;
  rep.main_term = main.value;
  rep.remainder_term = rem.value;
  rep.cross_term = 2.0 / p * cross.value;
  rep.quad_error_budget =
      0.25 * p * p * core.err + main.err + rem.err + 2.0 / p * cross.err;
  return finish(std::move(rep), rel_tol);
}

}  // namespace

IdentityReport eval_T3_forward(const LineProfile& profile, double p,
                               double rel_tol) {
  return eval_T3(profile, p, /*forward=*/true, rel_tol);
}

IdentityReport eval_T3_backward(const LineProfile& profile, double p,
                                double rel_tol) {
  return eval_T3(profile, p, /*forward=*/false, rel_tol);
}

double t3_forward_remainder_alt(const LineProfile& profile, double p,
                                double rel_tol) {
  T3Setup s = t3_forward_setup(profile, p);
  // same remainder, assembled with the weight split as (density)^2 * x
  const Term rem = line_integral(
      [&profile, p](double x) {
        const double d = safe_prod(profile.f(x), std::pow(x, -0.5 * p)) -
                         0.5 * p * safe_prod(profile.F(x), std::pow(x, -0.5 * p - 1.0));
        return safe_prod(d * d, x);
      },
      s.edge_decay, s.singular, rel_tol);
  return rem.value;
}

double t3_backward_remainder_alt(const LineProfile& profile, double p,
                                 double rel_tol) {
  T3Setup s = t3_backward_setup(profile, p);
  const Term rem = line_integral(
      [&profile, p](double x) {
        const double d = safe_prod(profile.f(x), std::pow(x, 0.5 * p)) -
                         0.5 * p * safe_prod(profile.G(x), std::pow(x, 0.5 * p - 1.0));
        return safe_prod(d * d, x);
      },
      s.edge_decay, s.singular, rel_tol);
  return rem.value;
}

// ---- two-vector decomposition in the weighted spaces -----------------------

hb::LemmaCheck lemma_weighted_T1(const RadialProfile& profile, int n,
                                 const AngularMode& mode, double rel_tol) {
  if (n < 3) throw std::invalid_argument("gradient identity requires n >= 3");
  const T1Pieces pc = t1_pieces(profile, n);
  const double A = mode.mass;
  const double c = 1.0 / (n - 2.0);
  const Decay& d = profile.decay;
  const std::vector<double>& s = profile.kinks;

  // u = phi/r, v = dphi (half-densities carry the r^{n-1} measure)
  auto uh = pc.lhs_half;
  auto vh = pc.main_half;
  const double uu = A * line_integral([&](double r) { return sq(uh(r)); }, d, s, rel_tol).value;
  const double vv = A * line_integral([&](double r) { return sq(vh(r)); }, d, s, rel_tol).value;
  const double uv = A * line_integral([&](double r) { return uh(r) * vh(r); }, d, s, rel_tol).value;
  const double ww = A * line_integral(
      [&](double r) { return sq(uh(r) + 2.0 * c * vh(r)); }, d, s, rel_tol).value;
  const double uw = A * line_integral(
      [&](double r) { return uh(r) * (uh(r) + 2.0 * c * vh(r)); }, d, s, rel_tol).value;
  return hb::lemma1_from_products(uu, vv, uv, ww, uw, c);
}

hb::LemmaCheck lemma_weighted_T2(const RadialProfile& profile, double R,
                                 const AngularMode& mode, double rel_tol) {
  if (!(R > 0.0) || !std::isfinite(R))
    throw std::invalid_argument("anchor radius must be positive and finite");
  const double A = mode.mass;
  const double phiR = profile.phi(R);
  const double c = 1.0;
  double uu = 0, vv = 0, uv = 0, ww = 0, uw = 0;
  for (double sgn : {1.0, -1.0}) {
    const T2Side side{&profile, R, sgn, phiR};
    const std::vector<double> splits = t2_splits(profile, R, sgn);
    // u = delta / log(R/r) (the signed quotient ratio computes on both
    // sides), v = r dphi; the u-coordinate absorbs the measure
    auto u_of = [side](double u) { return side.ratio(u); };
    auto v_of = [side](double u) { return side.rdphi(u); };
    uu += t2_ray([&](double t) { return sq(u_of(t)); }, splits, rel_tol).value;
    vv += t2_ray([&](double t) { return sq(v_of(t)); }, splits, rel_tol).value;
    uv += t2_ray([&](double t) { return u_of(t) * v_of(t); }, splits, rel_tol).value;
    ww += t2_ray([&](double t) { return sq(u_of(t) + 2.0 * c * v_of(t)); }, splits,
                 rel_tol).value;
    uw += t2_ray([&](double t) { return u_of(t) * (u_of(t) + 2.0 * c * v_of(t)); },
                 splits, rel_tol).value;
  }
  return hb::lemma1_from_products(A * uu, A * vv, A * uv, A * ww, A * uw, c);
}

hb::LemmaCheck lemma_weighted_T3_forward(const LineProfile& profile, double p,
                                         double rel_tol) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("weight exponent must be positive and finite");
  const T3Setup s = t3_forward_setup(profile, p);
  const double c = 1.0 / p;
  // u = F/x, v = -f, in the x^{-p+1} weight (folded into the half-densities);
  // u + 2cv decays like u alone, so those integrals take the edge hint
  auto uh = s.edge_half;
  auto vh = [&s](double x) { return -s.inner_half(x); };
  const Decay& di = s.inner_decay;
  const Decay& de = s.edge_decay;
  const double uu =
      line_integral([&](double x) { return sq(uh(x)); }, de, s.singular, rel_tol).value;
  const double vv =
      line_integral([&](double x) { return sq(vh(x)); }, di, s.singular, rel_tol).value;
  const double uv =
      line_integral([&](double x) { return uh(x) * vh(x); }, di, s.singular, rel_tol).value;
  const double ww = line_integral([&](double x) { return sq(uh(x) + 2.0 * c * vh(x)); },
                                  de, s.singular, rel_tol).value;
  const double uw = line_integral(
      [&](double x) { return uh(x) * (uh(x) + 2.0 * c * vh(x)); }, de, s.singular,
      rel_tol).value;
  return hb::lemma1_from_products(uu, vv, uv, ww, uw, c);
}

}  // namespace hardyeq::id
