#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace heunsc {

// Parameters of the ellipsoidal form of the Heun equation.  The exponent
// parameters satisfy the accessory constraint alpha + beta = gamma + delta
// + eps - 1; s is the accessory parameter and k2 the squared modulus of the
// elliptic substitution (k2 = 0 and k2 = 1 are admitted as degenerations).
struct HeunParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double s = 0.0;
  double k2 = 0.0;

  double fuchs_residual() const noexcept {
    return alpha + beta - (gamma + delta + eps - 1.0);
  }
  void validate() const;  // throws std::invalid_argument
};

// Association parameters: c shifts the recurrence index, mu perturbs the
// n = 0 coefficient (co-recursive modification).
struct AssocParams {
  HeunParams base;
  double c = 0.0;
  double mu = 0.0;

  void validate() const;
};

// Coefficients of the three-term recurrence read as a birth-death triple.
struct RateTriple {
  double birth = 0.0;  // multiplies F_{n-1} in the recurrence
  double death = 0.0;  // multiplies F_{n+1}
  double kill = 0.0;   // diagonal contribution proportional to delta
};

RateTriple heun_rates(const HeunParams& p, int n);
RateTriple assoc_rates(const AssocParams& a, int n);

// Taylor coefficients F_0..F_N of the normalized solution analytic at w = 0
// (F_0 = 1).
struct CoeffSeries {
  std::vector<double> coeffs;
  std::uint64_t params_hash = 0;

  int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

CoeffSeries heun_coeffs(const HeunParams& p, int n_max);
CoeffSeries assoc_coeffs(const AssocParams& a, int n_max);

// Grows the truncation order geometrically until the last ten terms at
// radius r_max fall below tol.
CoeffSeries series_to_tol(const AssocParams& a, double tol = 1e-12,
                          double r_max = 0.9);

struct SeriesValue {
  double value = 0.0;
  double tail_estimate = 0.0;
  int terms = 0;
};

SeriesValue eval_series_full(const CoeffSeries& s, double w,
                             double r_max = 0.9);
double eval_series(const CoeffSeries& s, double w, double r_max = 0.9);

// G_n = (1+c)_n (gamma+c)_n F_n; (-1)^n G_n is monic in the spectral
// variable x = s + k2 (alpha+c)(beta+c) - k2 delta c.
std::vector<double> monic_coeffs(const CoeffSeries& s, double c, double gamma);

// Parameter maps under which the coefficients change by Pochhammer ratios.
AssocParams map_alpha_gamma_swap(const AssocParams& a);  // alpha <-> gamma
AssocParams map_beta_gamma_swap(const AssocParams& a);   // beta <-> gamma
AssocParams map_alpha_shift(const AssocParams& a);       // all shifted by 1-alpha
AssocParams map_beta_shift(const AssocParams& a);        // all shifted by 1-beta

// Plain-Heun parameter set whose series coincides with the associated series
// at c = 1 - gamma, mu = 0.
HeunParams reduction_params(const HeunParams& p);

// Closed hypergeometric forms of the analytic solution at the degenerate
// moduli.  Complex intermediates may occur; the result must be real.
double heun_hyp_k0(const HeunParams& p, double w);
double heun_hyp_k1(const HeunParams& p, double w);

// Relative residual of the (inhomogeneous) differential equation evaluated
// with term-wise derivatives of the truncated series; scale is the largest
// participating term.
double ode_residual(const AssocParams& a, const CoeffSeries& s, double w);

double pochhammer(double x, int n);

// Gauss hypergeometric series, direct summation, |w| < 1.
std::complex<double> hyp2f1(std::complex<double> a, std::complex<double> b,
                            double c, double w);

std::uint64_t params_hash(const AssocParams& a);

}  // namespace heunsc
