#include "heunsc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heunsc {
namespace {

// Kronrod-15 abscissae (positive half) and weights; the embedded Gauss-7
// rule uses the odd-indexed abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Gk15 {
  double value = 0.0;
  double err = 0.0;
};

Gk15 gk15(const RealFn& f, double a, double b, std::size_t& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  evals += 15;

  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
  }
  for (int i = 0; i < 3; ++i) {
    resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i) {
    resasc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  }
  resasc *= h;
  resabs *= h;

  Gk15 r;
  r.value = resk * h;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  r.err = std::max(err, eps50 * 1e-6);
  return r;
}

struct AdaptiveState {
  const RealFn* f = nullptr;
  std::size_t evals = 0;
  int max_depth = 20;
  bool budget_exceeded = false;
};

// Depth-first bisection with a proportional error budget; deterministic
// left-to-right accumulation.
Gk15 adapt(AdaptiveState& st, double a, double b, double tol, int depth) {
  Gk15 whole = gk15(*st.f, a, b, st.evals);
  if (whole.err <= tol || !std::isfinite(whole.value)) {
    return whole;
  }
  if (depth >= st.max_depth) {
    st.budget_exceeded = true;
    return whole;
  }
  const double m = 0.5 * (a + b);
  Gk15 left = adapt(st, a, m, 0.5 * tol, depth + 1);
  Gk15 right = adapt(st, m, b, 0.5 * tol, depth + 1);
  Gk15 sum;
  sum.value = left.value + right.value;
  sum.err = left.err + right.err;
  return sum;
}

// Abscissa offset 1 - |x| and weight of the tanh-sinh rule at parameter t,
// computed against the exp form so the offset stays accurate near the
// endpoints: 1 - tanh(y) = 2 exp(-2y) / (1 + exp(-2y)).
struct TsNode {
  double offset = 0.0;  // distance of the abscissa from the endpoint, in
                        // units of the half-length
  double weight = 0.0;  // (pi/2) cosh(t) sech^2(y)
};

TsNode ts_node(double t) {
  const double half_pi = 1.5707963267948966;
  const double y = half_pi * std::sinh(t);
  const double e = std::exp(-2.0 * y);
  TsNode n;
  n.offset = 2.0 * e / (1.0 + e);
  n.weight = half_pi * std::cosh(t) * n.offset * (2.0 - n.offset);
  return n;
}

constexpr double kTsRange = 6.11;  // beyond this the offsets underflow

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, double tol) {
  QuadOptions opts;
  opts.abs_tol = tol;
  return integrate(f, a, b, opts);
}

QuadResult integrate(const RealFn& f, double a, double b,
                     const QuadOptions& opts) {
  if (!(a <= b)) {
    throw std::invalid_argument("integrate: interval endpoints out of order");
  }
  QuadResult res;
  if (a == b) {
    return res;
  }
  AdaptiveState st;
  st.f = &f;
  st.max_depth = opts.max_depth;
  Gk15 first = gk15(f, a, b, st.evals);
  const double budget =
      std::max(opts.abs_tol, opts.rel_tol * std::abs(first.value));
  Gk15 total = first;
  if (first.err > budget) {
    st.evals = 0;
    total = adapt(st, a, b, budget, 0);
  }
  res.value = total.value;
  res.abs_error_estimate = total.err;
  res.evaluations = st.evals;
  if (!std::isfinite(res.value)) {
    throw QuadratureError("integrate: integrand produced a non-finite value",
                          res);
  }
  if (st.budget_exceeded && total.err > budget) {
    throw QuadratureError(
        "integrate: error target not met after max subdivision depth", res);
  }
  return res;
}

QuadResult integrate_singular(const RealFn& f, double a, double b, double p,
                              double tol) {
  QuadOptions opts;
  opts.abs_tol = tol;
  return integrate_singular(f, a, b, p, 0.0, opts);
}

QuadResult integrate_singular(const RealFn& f, double a, double b, double p_a,
                              double p_b, const QuadOptions& opts) {
  if (!(a <= b)) {
    throw std::invalid_argument(
        "integrate_singular: interval endpoints out of order");
  }
  // Exponents very close to -1 need abscissae beyond the representable
  // offset range; the truncated tail mass stays below ~3e-16 for p > -0.94.
  if (p_a <= -0.94 || p_b <= -0.94) {
    throw std::domain_error(
        "integrate_singular: endpoint exponent must exceed -0.94");
  }
  QuadResult res;
  if (a == b) {
    return res;
  }

  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::size_t evals = 0;

  // The endpoint weight (x-a)^{p_a} (b-x)^{p_b} is applied here, from the
  // node offsets themselves, so it keeps full accuracy arbitrarily close to
  // the endpoints where b - x computed from the abscissa would cancel.
  auto weight_pow = [](double d, double p) -> double {
    return p == 0.0 ? 1.0 : std::pow(d, p);
  };
  auto sample = [&](double x, double near_d, double far_d, double p_near,
                    double p_far, double node_w) -> double {
    const double w =
        node_w * weight_pow(near_d, p_near) * weight_pow(far_d, p_far);
    if (w == 0.0 || !std::isfinite(w)) {
      return 0.0;
    }
    const double v = f(x);
    ++evals;
    const double contrib = w * v;
    return std::isfinite(contrib) ? contrib : 0.0;
  };

  // Trapezoid sums over the tanh-sinh abscissae; each level halves h and
  // adds the odd-indexed nodes.
  auto node_sum = [&](double t) -> double {
    TsNode n = ts_node(t);
    const double d = n.offset * half;
    if (d <= 0.0) {
      return 0.0;
    }
    // The abscissae may round onto the endpoints for tiny offsets; the
    // weights still use the exact offset d, and f is regular there, so the
    // nodes are kept rather than skipped (skipping would drop tail mass
    // that grows as the exponents approach -1).
    const double far = (b - a) - d;
    double acc = sample(a + d, d, far, p_a, p_b, n.weight);
    acc += sample(b - d, d, far, p_b, p_a, n.weight);
    return acc;
  };

  double h = 1.0;
  double raw =
      sample(mid, half, half, p_a, p_b, ts_node(0.0).weight);
  for (double t = h; t <= kTsRange; t += h) {
    raw += node_sum(t);
  }
  double value = raw * h * half;
  double err = std::numeric_limits<double>::infinity();
  double prev_value = value;
  double prev_diff = std::numeric_limits<double>::infinity();
  bool converged = false;

  for (int level = 1; level <= opts.max_levels; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTsRange; t += 2.0 * h) {
      raw += node_sum(t);
    }
    value = raw * h * half;
    const double diff = std::abs(value - prev_value);
    const double target =
        std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    if (diff <= target) {
      err = diff;
      converged = true;
      break;
    }
    // Roundoff floor: refinement stopped improving at a small residual.
    if (level >= 4 && diff >= prev_diff &&
        (prev_diff <= 32.0 * target ||
         prev_diff <= 1e-14 * std::abs(value))) {
      err = prev_diff;
      converged = true;
      break;
    }
    prev_value = value;
    prev_diff = diff;
  }

  res.value = value;
  res.abs_error_estimate = std::isfinite(err) ? err : prev_diff;
  res.evaluations = evals;
  if (!converged) {
    throw QuadratureError(
        "integrate_singular: tanh-sinh refinement exhausted before "
        "reaching the error target",
        res);
  }
  return res;
}

ComplexQuadResult integrate_singular_complex(const ComplexFn& f, double a,
                                             double b,
                                     double p_a, double p_b,
                                     const QuadOptions& opts) {
  QuadResult re = integrate_singular(
      [&](double t) { return f(t).real(); }, a, b, p_a, p_b, opts);
  QuadResult im = integrate_singular(
      [&](double t) { return f(t).imag(); }, a, b, p_a, p_b, opts);
  ComplexQuadResult res;
  res.value = {re.value, im.value};
  res.abs_error_estimate = re.abs_error_estimate + im.abs_error_estimate;
  res.evaluations = re.evaluations + im.evaluations;
  return res;
}

}  // namespace heunsc
