#pragma once

#include "heunsc/heun.hpp"

namespace heunsc {

// Euler beta function via log-gamma; a, b > 0.
double beta_function(double a, double b);

// Which exponent parameter pivots the transform.
enum class Pivot { alpha, beta };

struct TransformReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  AssocParams params_in;
  AssocParams params_out;
};

// Beta-weighted integral connections between associated series.
//
// First transform (pivot alpha, validity gamma > alpha > -c):
//   Hn(c, mu, P; w) = 1/B(gamma-alpha, alpha+c) *
//     integral_0^1 t^(c+alpha-1) (1-t)^(gamma-alpha-1)
//                  Hn(c, mu, P'; w t) dt,
// with P' the gamma-swap of the pivot.
//
// Second transform (pivot alpha, validity 1 > alpha > -c):
//   Hn(c, mu, P; w) = 1/B(1-alpha, c+alpha) *
//     integral_0^1 t^(c+alpha-1) (1-t)^(-alpha)
//                  Hn(c+alpha-1, mu, P''; w t) dt,
// with P'' the shift map of the pivot.
TransformReport first_transform(const AssocParams& a, double w,
                                Pivot pivot = Pivot::alpha,
                                double quad_tol = 1e-10,
                                double series_tol = 1e-13);
TransformReport second_transform(const AssocParams& a, double w,
                                 Pivot pivot = Pivot::alpha,
                                 double quad_tol = 1e-10,
                                 double series_tol = 1e-13);

}  // namespace heunsc
