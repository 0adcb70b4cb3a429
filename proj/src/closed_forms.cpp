#include "heunsc/closed_forms.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "heunsc/elliptic.hpp"

namespace heunsc {
namespace {

double elliptic_factor(int code, const JacobiTriple& j) {
  switch (code) {
    case 1:
      return j.cn;
    case 2:
      return j.dn;
    case 3:
      return j.cn * j.dn;
    default:
      return 1.0;
  }
}

// (1 - cos kernel) / sigma, entire in sigma; equals 2 theta^2 at sigma = 0.
double one_minus_kcos_over_sigma(double sigma, double theta) {
  const double t = std::sqrt(std::abs(sigma)) * theta;
  if (t < 1e-150) {
    return 2.0 * theta * theta;
  }
  const double s = sigma > 0.0 ? std::sin(t) / t : std::sinh(t) / t;
  return 2.0 * theta * theta * s * s;
}

QuadOptions kernel_opts(double tol) {
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = tol;
  opts.max_levels = 14;
  return opts;
}

}  // namespace

double kernel_cos_factor(double sigma, double tau) {
  if (sigma >= 0.0) {
    return std::cos(2.0 * std::sqrt(sigma) * tau);
  }
  return std::cosh(2.0 * std::sqrt(-sigma) * tau);
}

double kernel_sin_factor(double sigma, double tau) {
  const double z2 = 4.0 * sigma * tau * tau;
  if (std::abs(z2) < 1e-6) {
    return tau * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
  }
  if (sigma > 0.0) {
    const double r = 2.0 * std::sqrt(sigma);
    return std::sin(r * tau) / r;
  }
  const double r = 2.0 * std::sqrt(-sigma);
  return std::sinh(r * tau) / r;
}

double cos_kernel_integral(const RealFn& f, double theta, double sigma,
                           double p, double tol) {
  if (!(theta >= 0.0)) {
    throw std::domain_error("cos_kernel_integral: theta must be >= 0");
  }
  if (p <= -0.94) {
    throw std::domain_error(
        "cos_kernel_integral: endpoint exponent must exceed -0.94");
  }
  if (theta == 0.0) {
    return 0.0;
  }
  const QuadResult q = integrate_singular(
      [&](double u) { return kernel_cos_factor(sigma, theta - u) * f(u); },
      0.0, theta, 0.0, 0.0, kernel_opts(tol));
  return q.value;
}

double sin_kernel_integral(const RealFn& f, double theta, double sigma,
                           double p, double tol) {
  if (!(theta >= 0.0)) {
    throw std::domain_error("sin_kernel_integral: theta must be >= 0");
  }
  if (p <= -0.94) {
    throw std::domain_error(
        "sin_kernel_integral: endpoint exponent must exceed -0.94");
  }
  if (theta == 0.0) {
    return 0.0;
  }
  const QuadResult q = integrate_singular(
      [&](double u) { return kernel_sin_factor(sigma, theta - u) * f(u); },
      0.0, theta, 0.0, 0.0, kernel_opts(tol));
  return q.value;
}

double FamilySpec::sigma_shift(double c, double k2) const noexcept {
  const double t = c + shift_off;
  return shift_const + k2 * t * t;
}

double FamilySpec::accessory_s(double c, double sigma,
                               double k2) const noexcept {
  return sigma - sigma_shift(c, k2);
}

double FamilySpec::prefactor(double w, double c, double k2) const {
  return std::pow(w, c + pre_w) * std::pow(1.0 - w, pre_1mw) *
         std::pow(1.0 - k2 * w, pre_1mk2w);
}

double FamilySpec::cos_integrand(const JacobiTriple& j, double c,
                                 double /*mu*/, double k2) const {
  (void)k2;
  if (!has_cos) {
    return 0.0;
  }
  return 2.0 * c * std::pow(j.sn, 2.0 * c - 1.0) *
         elliptic_factor(cos_factor, j);
}

double FamilySpec::sin_integrand(const JacobiTriple& j, double c, double mu,
                                 double k2) const {
  const double sn2c = std::pow(j.sn, 2.0 * c);
  switch (id) {
    case 1:
      return 4.0 * (c * c * (1.0 + k2) + mu) * sn2c -
             2.0 * c * (2.0 * c + 1.0) * k2 * sn2c * j.sn * j.sn;
    case 2:
      return 4.0 * (k2 * c * c + mu) * sn2c * j.cn;
    case 3:
      return 4.0 * (c * c + mu) * sn2c * j.dn;
    case 4:
      return 4.0 * mu * sn2c * j.cn * j.dn;
    default:
      return (2.0 * c * (2.0 * c + 1.0) * std::pow(j.sn, 2.0 * c - 1.0) +
              4.0 * mu * sn2c * j.sn) *
             elliptic_factor(sin_factor, j);
  }
}

double FamilySpec::cos_exponent(double c) const noexcept {
  return 2.0 * c - 1.0;
}

double FamilySpec::sin_exponent(double c) const noexcept {
  return has_cos ? 2.0 * c : 2.0 * c - 1.0;
}

const FamilySpec& family(int id) {
  static const std::array<FamilySpec, 8> kFamilies = [] {
    std::array<FamilySpec, 8> f{};
    // id, alpha, beta, gamma, delta, eps, shift q0/q1, prefactor exponents,
    // cos/sin elliptic factor codes, cos part present.
    f[0] = {1, 0.0, 0.5, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 3, 4, true};
    f[1] = {2, 0.5, 1.0, 0.5, 1.5, 0.5, 0.25, 0.0, 0.0, 0.5, 0.0, 2, 1, true};
    f[2] = {3, 0.5, 1.0, 0.5, 0.5, 1.5, 0.0, 0.5, 0.0, 0.0, 0.5, 1, 2, true};
    f[3] = {4, 1.0, 1.5, 0.5, 1.5, 1.5, 0.25, 0.5, 0.0, 0.5, 0.5, 4, 3, true};
    f[4] = {5, 0.5, 1.0, 1.5, 0.5, 0.5, 0.25, 0.5, 0.5, 0.0, 0.0, 0, 4, false};
    f[5] = {6, 1.0, 1.5, 1.5, 1.5, 0.5, 1.0, 0.5, 0.5, 0.5, 0.0, 0, 1, false};
    f[6] = {7, 1.0, 1.5, 1.5, 0.5, 1.5, 0.25, 1.0, 0.5, 0.0, 0.5, 0, 2, false};
    f[7] = {8, 1.5, 2.0, 1.5, 1.5, 1.5, 1.0, 1.0, 0.5, 0.5, 0.5, 0, 3, false};
    return f;
  }();
  if (id < 1 || id > 8) {
    throw std::invalid_argument("family: id must be in 1..8");
  }
  return kFamilies[static_cast<std::size_t>(id - 1)];
}

AssocParams family_assoc_params(const FamilySpec& spec, double c, double mu,
                                double sigma, double k2) {
  AssocParams a;
  a.base.alpha = spec.alpha;
  a.base.beta = spec.beta;
  a.base.gamma = spec.gamma;
  a.base.delta = spec.delta;
  a.base.eps = spec.eps;
  a.base.s = spec.accessory_s(c, sigma, k2);
  a.base.k2 = k2;
  a.c = c;
  a.mu = mu;
  return a;
}

double eval_closed_form(const FamilySpec& spec, double c, double mu,
                        double sigma, double w, double k2, double quad_tol) {
  if (!(c >= 0.03)) {
    throw std::domain_error(
        "eval_closed_form: requires c >= 0.03; use c0_limit for the c -> 0 "
        "limit");
  }
  if (!(w > 0.0 && w < 1.0)) {
    throw std::domain_error("eval_closed_form: w must lie in (0, 1)");
  }
  const double theta = theta_of_w(w, k2);
  double total = sin_kernel_integral(
      [&](double u) {
        return spec.sin_integrand(jacobi(u, k2), c, mu, k2);
      },
      theta, sigma, spec.sin_exponent(c), quad_tol);
  if (spec.has_cos) {
    total += cos_kernel_integral(
        [&](double u) {
          return spec.cos_integrand(jacobi(u, k2), c, mu, k2);
        },
        theta, sigma, spec.cos_exponent(c), quad_tol);
  }
  return total / spec.prefactor(w, c, k2);
}

double c0_limit(const FamilySpec& spec, double mu, double sigma, double w,
                double k2, double quad_tol) {
  if (!spec.has_cos) {
    throw std::domain_error(
        "c0_limit: only the families with a cos part have a c -> 0 limit "
        "normalized at 1");
  }
  if (!(w > 0.0 && w < 1.0)) {
    throw std::domain_error("c0_limit: w must lie in (0, 1)");
  }
  const double theta = theta_of_w(w, k2);
  double value = kernel_cos_factor(sigma, theta);
  if (mu != 0.0) {
    if (spec.id == 1) {
      value += mu * one_minus_kcos_over_sigma(sigma, theta);
    } else {
      value += 4.0 * mu *
               sin_kernel_integral(
                   [&](double u) {
                     return elliptic_factor(spec.sin_factor, jacobi(u, k2));
                   },
                   theta, sigma, 0.0, quad_tol);
    }
  }
  return value / spec.prefactor(w, 0.0, k2);
}

}  // namespace heunsc
