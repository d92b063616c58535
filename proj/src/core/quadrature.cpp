#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace hardyeq::quad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// G7-K15 nodes and weights (positive half; node 7 is the centre).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, err, resabs;
};

struct PieceOrder {
  bool operator()(const Piece& p, const Piece& q) const { return p.err < q.err; }
};

[[noreturn]] void fail_sample(double x) {
  std::ostringstream os;
  os << "integrand not finite at x = " << x;
  throw QuadError(QuadFailure::bad_sample, os.str());
}

// One G7-K15 application with the QUADPACK error estimate
// err = resasc * min(1, (200 |K - G| / resasc)^1.5).
Piece apply_rule(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::fabs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv[j] = f(c - dx);
    fv[14 - j] = f(c + dx);
    const double sum = fv[j] + fv[14 - j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  for (int j = 0; j < 15; ++j)
    if (!std::isfinite(fv[j])) fail_sample(c + h * (j < 7 ? -kXgk[j] : kXgk[14 - j]));
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fv[7] - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));
  resasc *= std::fabs(h);
  resabs *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > 1e-290) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, resk * h, err, resabs};
}

struct Budget {
  std::size_t used = 0;
  std::size_t cap = 0;
};

struct Sum {
  double value = 0.0;
  double err = 0.0;
};

double kahan_total(std::vector<Piece>& pieces, double& err_out) {
  // Largest-magnitude-first compensated sum keeps the recount stable.
  std::sort(pieces.begin(), pieces.end(), [](const Piece& p, const Piece& q) {
    return std::fabs(p.value) > std::fabs(q.value);
  });
  double s = 0.0, comp = 0.0, e = 0.0;
  for (const Piece& p : pieces) {
    const double y = p.value - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
    e += p.err;
  }
  err_out = e;
  return s;
}

// Core refinement loop over an initial set of segments.  Stops when the error
// sum drops below max(abs_tol, rel_tol * max(1,|value|), roundoff floor).
Sum refine(const std::function<double(double)>& f, const std::vector<double>& bounds,
           double abs_tol, double rel_tol, Budget& budget) {
  std::priority_queue<Piece, std::vector<Piece>, PieceOrder> heap;
  double vsum = 0, esum = 0, rsum = 0;
  auto push = [&](const Piece& p) {
    vsum += p.value;
    esum += p.err;
    rsum += p.resabs;
    heap.push(p);
    ++budget.used;  // one unit of work per rule application
  };
  // Minimum depth of two per segment so a feature smaller than the segment
  // cannot slip between the nodes of a single rule application.
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double a = bounds[i], b = bounds[i + 1];
    for (int k = 0; k < 4; ++k)
      push(apply_rule(f, a + (b - a) * (k / 4.0), a + (b - a) * ((k + 1) / 4.0)));
  }
  // The acceptance floor carries 2x headroom over the per-piece error clamp
  // (50 eps resabs in apply_rule): once every piece is pinned at its clamp,
  // esum and 50*eps*rsum are the same quantity accumulated two different
  // ways, and ulp drift between them would otherwise stall the loop with
  // every split replacing floor-bound pieces by floor-bound pieces.
  auto done = [&] {
    return esum <= std::max({abs_tol, rel_tol * std::max(1.0, std::fabs(vsum)),
                             100.0 * kEps * rsum});
  };
  while (!done()) {
    if (budget.used >= budget.cap) {
      std::vector<Piece> rest;
      while (!heap.empty()) {
        rest.push_back(heap.top());
        heap.pop();
      }
      double e = 0;
      const double v = kahan_total(rest, e);
      throw QuadError(QuadFailure::budget_exhausted,
                      "subdivision budget exhausted before convergence",
                      {v, e, budget.used});
    }
    Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval at the ulp floor
    heap.pop();
    vsum -= worst.value;
    esum -= worst.err;
    rsum -= worst.resabs;
    push(apply_rule(f, worst.a, mid));
    push(apply_rule(f, mid, worst.b));
  }
  std::vector<Piece> rest;
  while (!heap.empty()) {
    rest.push_back(heap.top());
    heap.pop();
  }
  double e = 0;
  const double v = kahan_total(rest, e);
  return {v, e};
}

std::vector<double> segment_bounds(double a, double b, const std::vector<double>& splits) {
  std::vector<double> bounds{a};
  std::vector<double> inner;
  for (double s : splits)
    if (s > a && s < b) inner.push_back(s);
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  bounds.insert(bounds.end(), inner.begin(), inner.end());
  bounds.push_back(b);
  return bounds;
}

struct RaySettings {
  double v0 = 0.0;
  double cap = 1.2e18;
  double abs_floor = 0.0;
  double min_reach = 2.0;  // do not stop before the window covers [v0, v0+min_reach]
  std::vector<double> splits{};
};

// ∫_{v0}^inf f dv.  Base window [v0, v0+1] (endpoint v0 may be singular), then
// doubling windows [v0+2^K, v0+2^{K+1}].  A window passes the smallness test
// when value+error fall below a quarter of the target twice in a row; otherwise
// the Richardson table on the partial sums must stabilise.
Sum ray(const std::function<double(double)>& f, double rel_tol, const RaySettings& rs,
        Budget& budget) {
  double acc = 0, comp = 0, err = 0;
  auto accumulate = [&](double v) {
    const double y = v - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  };
  auto target = [&] {
    return std::max(rs.abs_floor, rel_tol * std::max(1.0, std::fabs(acc)));
  };
  {
    const Sum base = refine(f, segment_bounds(rs.v0, rs.v0 + 1.0, rs.splits),
                            0.25 * rel_tol, 0.0, budget);
    accumulate(base.value);
    err += base.err;
  }
  std::vector<std::vector<double>> table;  // Richardson rows over partial sums
  double lo = 1.0, window_errs = 0, diag_prev = 0;
  int below = 0;
  bool have_diag = false;
  while (true) {
    if (rs.v0 + 2.0 * lo > rs.cap) {
      throw QuadError(QuadFailure::tail_nonconvergence,
                      "tail windows reached the expansion cap without converging",
                      {acc, err, budget.used});
    }
    const Sum w = refine(f, segment_bounds(rs.v0 + lo, rs.v0 + 2.0 * lo, rs.splits),
                         0.002 * target(), 0.0, budget);
    accumulate(w.value);
    window_errs += w.err;
    const bool explored = rs.v0 + 2.0 * lo >= rs.v0 + rs.min_reach;
    if (std::fabs(w.value) + w.err <= 0.25 * target()) {
      if (++below >= 2 && explored) {
        err += window_errs + 2.0 * (std::fabs(w.value) + w.err);
        return {acc, err};
      }
    } else {
      below = 0;
    }
    // Richardson row: remainders of power tails are geometric mixtures with
    // ratios 2^-m, eliminated level by level.
    std::vector<double> row{acc};
    const std::size_t K = table.size();
    for (std::size_t m = 1; m <= K && m <= 10; ++m) {
      const double fac = std::ldexp(1.0, static_cast<int>(m));
      row.push_back((fac * row[m - 1] - table[K - 1][m - 1]) / (fac - 1.0));
    }
    if (K >= 3 && row.size() >= 4 && have_diag && explored) {
      const double cur = row.back();
      const double diag_err =
          std::fabs(cur - diag_prev) + 2.0 * window_errs + 1e-15 * std::fabs(cur);
      if (diag_err <= 0.5 * target() &&
          std::fabs(cur - acc) < 0.5 * std::max(1.0, std::fabs(acc))) {
        err += diag_err;
        return {cur, err};
      }
    }
    if (!row.empty()) {
      diag_prev = row.back();
      have_diag = true;
    }
    table.push_back(std::move(row));
    lo *= 2.0;
  }
}

void check_rel_tol(double rel_tol) {
  if (!(rel_tol >= kMinRelTol) || !(rel_tol < 1.0))
    throw QuadError(QuadFailure::bad_argument,
                    "rel_tol must lie in [1e-14, 1)");
}

double transformed_cap() { return 700.0; }  // keeps exp(±v) representable

// ∫_(0,m] g dx through x = e^-v; v0 = -log m.  Needed whenever the behaviour
// at 0 has slower-than-power structure (plain bisection cannot cluster doubly
// exponentially toward an endpoint).
Sum log_prefix(const Integrand& g, double m, double rel_tol, Budget& budget) {
  RaySettings rs;
  rs.v0 = -std::log(m);
  rs.cap = transformed_cap();
  std::vector<double> splits;
  for (double s : g.singular_points)
    if (s > 0 && s < m) splits.push_back(-std::log(s));
  rs.splits = splits;
  for (double s : splits) rs.min_reach = std::max(rs.min_reach, 2.0 * (s - rs.v0));
  return ray([&g](double v) { const double x = std::exp(-v); return g.eval(x) * x; },
             rel_tol, rs, budget);
}

bool listed_singular_zero(const Integrand& g) {
  for (double s : g.singular_points)
    if (s == 0.0) return true;
  return false;
}

}  // namespace

QuadResult integrate_finite(const Integrand& g, double a, double b, double rel_tol,
                            const QuadLimits& limits) {
  check_rel_tol(rel_tol);
  if (!g.eval) throw QuadError(QuadFailure::bad_argument, "integrand not set");
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw QuadError(QuadFailure::bad_argument, "need finite bounds with a < b");
  for (int attempt = 0; attempt < 3; ++attempt) {
    const double rel_eff = rel_tol / (1 << (2 * attempt));
    Budget budget{0, limits.max_subdivisions};
    Sum total{};
    if (a == 0.0 && listed_singular_zero(g)) {
      const double m = std::min(b, 1.0);
      const Sum low = log_prefix(g, m, 0.5 * rel_eff, budget);
      total = low;
      if (b > m) {
        const Sum rest =
            refine(g.eval, segment_bounds(m, b, g.singular_points),
                   0.5 * rel_eff * std::max(1.0, std::fabs(low.value)), 0.0, budget);
        total.value += rest.value;
        total.err += rest.err;
      }
    } else {
      total = refine(g.eval, segment_bounds(a, b, g.singular_points), 0.0, rel_eff,
                     budget);
    }
    if (total.err <= rel_tol * std::max(1.0, std::fabs(total.value)))
      return {total.value, total.err, budget.used};
  }
  throw QuadError(QuadFailure::budget_exhausted,
                  "requested relative tolerance not reached after refinement retries");
}

QuadResult integrate_ray(const Integrand& h, double rel_tol, const QuadLimits& limits,
                         double upper_cap, double abs_floor) {
  check_rel_tol(rel_tol);
  if (!h.eval) throw QuadError(QuadFailure::bad_argument, "integrand not set");
  Budget budget{0, limits.max_subdivisions};
  RaySettings rs;
  rs.cap = upper_cap;
  rs.abs_floor = abs_floor;
  rs.splits = h.singular_points;
  for (double s : h.singular_points) rs.min_reach = std::max(rs.min_reach, 2.0 * s);
  const Sum total = ray(h.eval, rel_tol, rs, budget);
  return {total.value, total.err, budget.used};
}

QuadResult integrate_halfline(const Integrand& g, double rel_tol, DecayHint hint,
                              const QuadLimits& limits) {
  check_rel_tol(rel_tol);
  if (!g.eval) throw QuadError(QuadFailure::bad_argument, "integrand not set");
  if (hint.kind == DecayHint::Kind::compact_support) {
    const double lo = hint.support_lo, hi = hint.support_hi;
    if (!(lo >= 0) || !(hi > lo) || !std::isfinite(hi))
      throw QuadError(QuadFailure::bad_argument, "compact support needs 0 <= lo < hi < inf");
    if (lo > 0.0 && hi / lo > 100.0) {
      // Wide log-scale support: integrate in t = log r so refinement effort is
      // spread across scales instead of wasted on an enormous r-interval.
      Integrand t_space;
      t_space.eval = [&g](double t) {
        const double r = std::exp(t);
        return g.eval(r) * r;
      };
      for (double s : g.singular_points)
        if (s > 0) t_space.singular_points.push_back(std::log(s));
      return integrate_finite(t_space, std::log(lo), std::log(hi), rel_tol, limits);
    }
    Integrand window = g;
    return integrate_finite(window, lo, hi, rel_tol, limits);
  }
  // Exponential / power decay: log coordinate, rays to either side of r = 1.
  for (int attempt = 0; attempt < 3; ++attempt) {
    const double rel_eff = rel_tol / (1 << (2 * attempt));
    Budget budget{0, limits.max_subdivisions};
    RaySettings up, down;
    up.cap = down.cap = transformed_cap();
    for (double s : g.singular_points) {
      if (s > 1.0) up.splits.push_back(std::log(s));
      if (s > 0.0 && s < 1.0) down.splits.push_back(-std::log(s));
    }
    for (double s : up.splits) up.min_reach = std::max(up.min_reach, 2.0 * s);
    for (double s : down.splits) down.min_reach = std::max(down.min_reach, 2.0 * s);
    const Sum upper = ray(
        [&g](double t) { const double r = std::exp(t); return g.eval(r) * r; },
        0.5 * rel_eff, up, budget);
    const Sum lower = ray(
        [&g](double t) { const double r = std::exp(-t); return g.eval(r) * r; },
        0.5 * rel_eff, down, budget);
    const double value = upper.value + lower.value;
    const double err = upper.err + lower.err;
    if (err <= rel_tol * std::max(1.0, std::fabs(value)))
      return {value, err, budget.used};
  }
  throw QuadError(QuadFailure::budget_exhausted,
                  "requested relative tolerance not reached after refinement retries");
}

QuadResult integrate_log_split(const Integrand& g, double R, double rel_tol,
                               const QuadLimits& limits) {
  check_rel_tol(rel_tol);
  if (!g.eval) throw QuadError(QuadFailure::bad_argument, "integrand not set");
  if (!(R > 0) || !std::isfinite(R))
    throw QuadError(QuadFailure::bad_argument, "split radius must be positive and finite");
  for (int attempt = 0; attempt < 3; ++attempt) {
    const double rel_eff = rel_tol / (1 << (2 * attempt));
    Budget budget{0, limits.max_subdivisions};
    RaySettings in, out;
    in.cap = out.cap = transformed_cap();
    for (double s : g.singular_points) {
      if (s > 0.0 && s < R) in.splits.push_back(std::log(R / s));
      if (s > R && std::isfinite(s)) out.splits.push_back(std::log(s / R));
    }
    for (double s : in.splits) in.min_reach = std::max(in.min_reach, 2.0 * s);
    for (double s : out.splits) out.min_reach = std::max(out.min_reach, 2.0 * s);
    const Sum inner = ray(
        [&g, R](double u) {
          const double r = R * std::exp(-u);
          return g.eval(r) * r;
        },
        0.5 * rel_eff, in, budget);
    const Sum outer = ray(
        [&g, R](double u) {
          const double r = R * std::exp(u);
          return g.eval(r) * r;
        },
        0.5 * rel_eff, out, budget);
    const double value = inner.value + outer.value;
    const double err = inner.err + outer.err;
    if (err <= rel_tol * std::max(1.0, std::fabs(value)))
      return {value, err, budget.used};
  }
  throw QuadError(QuadFailure::budget_exhausted,
                  "requested relative tolerance not reached after refinement retries");
}

}  // namespace hardyeq::quad
