#include "heunsc/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "heunsc/quadrature.hpp"

namespace heunsc {
namespace {

struct PivotView {
  double value;           // the exponent parameter being integrated over
  AssocParams partner;    // parameters of the integrand series
};

PivotView pivot_view_first(const AssocParams& a, Pivot pivot) {
  PivotView v;
  if (pivot == Pivot::alpha) {
    v.value = a.base.alpha;
    v.partner = map_alpha_gamma_swap(a);
  } else {
    v.value = a.base.beta;
    v.partner = map_beta_gamma_swap(a);
  }
  return v;
}

PivotView pivot_view_second(const AssocParams& a, Pivot pivot) {
  PivotView v;
  if (pivot == Pivot::alpha) {
    v.value = a.base.alpha;
    v.partner = map_alpha_shift(a);
  } else {
    v.value = a.base.beta;
    v.partner = map_beta_shift(a);
  }
  return v;
}

}  // namespace

double beta_function(double a, double b) {
  if (a <= 0.0 || b <= 0.0) {
    throw std::domain_error("beta_function: arguments must be positive");
  }
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

TransformReport first_transform(const AssocParams& a, double w, Pivot pivot,
                                double quad_tol, double series_tol) {
  a.validate();
  if (!(w > 0.0 && w < 1.0)) {
    throw std::domain_error("first_transform: w must lie in (0, 1)");
  }
  const PivotView v = pivot_view_first(a, pivot);
  const double av = v.value;
  const double g = a.base.gamma;
  if (!(g - av > 0.0 && av + a.c > 0.0)) {
    throw std::domain_error(
        "first_transform: requires gamma > pivot exponent > -c");
  }

  TransformReport rep;
  rep.params_in = a;
  rep.params_out = v.partner;

  const CoeffSeries lhs_series = series_to_tol(a, series_tol);
  const CoeffSeries rhs_series = series_to_tol(v.partner, series_tol);
  rep.lhs = std::pow(w, a.c) * eval_series(lhs_series, w);

  // Integral over t in (0, 1): t^{c+pivot-1} (1-t)^{gamma-pivot-1} f(tw).
  const double norm = beta_function(g - av, av + a.c);
  QuadOptions opts;
  opts.abs_tol = quad_tol;
  opts.rel_tol = quad_tol;
  const QuadResult q = integrate_singular(
      [&](double t) {
        return eval_series(rhs_series, t * w);
      },
      0.0, 1.0, a.c + av - 1.0, g - av - 1.0, opts);
  rep.rhs = std::pow(w, a.c) * q.value / norm;
  rep.abs_diff = std::abs(rep.lhs - rep.rhs);
  return rep;
}

TransformReport second_transform(const AssocParams& a, double w, Pivot pivot,
                                 double quad_tol, double series_tol) {
  a.validate();
  if (!(w > 0.0 && w < 1.0)) {
    throw std::domain_error("second_transform: w must lie in (0, 1)");
  }
  const PivotView v = pivot_view_second(a, pivot);
  const double av = v.value;
  if (!(1.0 - av > 0.0 && av + a.c > 0.0)) {
    throw std::domain_error(
        "second_transform: requires 1 > pivot exponent > -c");
  }

  TransformReport rep;
  rep.params_in = a;
  rep.params_out = v.partner;

  const CoeffSeries lhs_series = series_to_tol(a, series_tol);
  const CoeffSeries rhs_series = series_to_tol(v.partner, series_tol);
  rep.lhs = std::pow(w, a.c) * eval_series(lhs_series, w);

  // Integral over t in (0, 1): t^{c+pivot-1} (1-t)^{-pivot} f(tw);
  // the image series carries exponent c + pivot - 1.
  const double norm = beta_function(1.0 - av, av + a.c);
  QuadOptions opts;
  opts.abs_tol = quad_tol;
  opts.rel_tol = quad_tol;
  const QuadResult q = integrate_singular(
      [&](double t) {
        return eval_series(rhs_series, t * w);
      },
      0.0, 1.0, a.c + av - 1.0, -av, opts);
  rep.rhs = std::pow(w, a.c) * q.value / norm;
  rep.abs_diff = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace heunsc
