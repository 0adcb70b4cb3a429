#pragma once

#include "heunsc/elliptic.hpp"
#include "heunsc/heun.hpp"
#include "heunsc/quadrature.hpp"

namespace heunsc {

// Oscillatory convolution kernels over (0, theta).  Both are entire in
// sigma: for sigma < 0 the trigonometric functions continue to their
// hyperbolic counterparts, and the sin kernel tends to (theta - u) as
// sigma -> 0.
//   cos kernel:  integral_0^theta cos(2 sqrt(sigma) (theta-u)) f(u) du
//   sin kernel:  integral_0^theta sin(2 sqrt(sigma) (theta-u))
//                                 / (2 sqrt(sigma)) f(u) du
// p declares the endpoint exponent of f at u = 0 (algebraic, > -1).
double cos_kernel_integral(const RealFn& f, double theta, double sigma,
                           double p = 0.0, double tol = 1e-10);
double sin_kernel_integral(const RealFn& f, double theta, double sigma,
                           double p = 0.0, double tol = 1e-10);

// Pointwise kernel factors.
double kernel_cos_factor(double sigma, double tau);
double kernel_sin_factor(double sigma, double tau);

// One of the eight parameter families whose normalized series solution has
// an elliptic-kernel integral representation.  With w = sn^2(theta),
//
//   prefactor(w) * Hn(c, mu, P; w) = cos-kernel[cos integrand]
//                                  + sin-kernel[sin integrand],
//
// where P carries the accessory parameter s = sigma - shift(c, k2).
// Families 5-8 have no cos part.
struct FamilySpec {
  int id = 0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0, eps = 0.0;
  double shift_const = 0.0;   // shift = shift_const + k2 (c + shift_off)^2
  double shift_off = 0.0;
  double pre_w = 0.0;         // prefactor = w^(c + pre_w) (1-w)^pre_1mw
  double pre_1mw = 0.0;       //             * (1-k2 w)^pre_1mk2w
  double pre_1mk2w = 0.0;
  int cos_factor = 0;         // elliptic factor codes: 0 none, 1 cn,
  int sin_factor = 0;         //   2 dn, 3 cn*dn, 4 unity
  bool has_cos = false;

  double sigma_shift(double c, double k2) const noexcept;
  double accessory_s(double c, double sigma, double k2) const noexcept;
  double prefactor(double w, double c, double k2) const;
  // Integrands as functions of the elliptic triple at the integration point.
  double cos_integrand(const JacobiTriple& j, double c, double mu,
                       double k2) const;
  double sin_integrand(const JacobiTriple& j, double c, double mu,
                       double k2) const;
  double cos_exponent(double c) const noexcept;  // endpoint exponent at u=0
  double sin_exponent(double c) const noexcept;
};

// Registry of the eight families; id in 1..8.
const FamilySpec& family(int id);

// Series-side parameter set matching eval_closed_form(spec, c, mu, sigma, .).
AssocParams family_assoc_params(const FamilySpec& spec, double c, double mu,
                                double sigma, double k2);

// Kernel-integral value of Hn(c, mu, P; w) for c > 0.
double eval_closed_form(const FamilySpec& spec, double c, double mu,
                        double sigma, double w, double k2,
                        double quad_tol = 1e-10);

// c -> 0 limit (families 1-4).  Family 1 is fully closed:
// cos(2 sqrt(sigma) theta) + (mu/sigma)(1 - cos(2 sqrt(sigma) theta)).
double c0_limit(const FamilySpec& spec, double mu, double sigma, double w,
                double k2, double quad_tol = 1e-10);

}  // namespace heunsc
