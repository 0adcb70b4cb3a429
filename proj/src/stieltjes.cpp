#include "heunsc/stieltjes.hpp"

#include <cmath>
#include <stdexcept>

#include "heunsc/elliptic.hpp"
#include "heunsc/quadrature.hpp"

namespace heunsc {

double SCRates::birth(int n) const noexcept {
  const double t = 2.0 * n + 2.0 * c + 1.0;
  return k2 * t * t;
}

double SCRates::death(int n) const noexcept {
  const double t = n + c;
  return 4.0 * t * t + (n == 0 ? mu : 0.0);
}

void SCRates::validate() const {
  if (!(c >= 0.0) || !(mu >= 0.0)) {
    throw std::invalid_argument("SCRates: c and mu must be non-negative");
  }
  if (!(k2 > 0.0 && k2 < 1.0)) {
    throw std::invalid_argument("SCRates: k2 must lie in (0, 1)");
  }
}

namespace {

QuadOptions d_opts(double rel_tol) {
  QuadOptions opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = rel_tol;
  opts.max_levels = 14;
  return opts;
}

// Elliptic weight of the D-integrand; the c = 1/2 coefficient kills the
// singular term, which must then be skipped rather than multiplied by zero.
double d_weight(const JacobiTriple& j, double c, double mu) {
  const double coef = 2.0 * c * (2.0 * c - 1.0);
  double t = mu == 0.0 ? 0.0 : mu * std::pow(j.sn, 2.0 * c);
  if (coef != 0.0) {
    t += coef * std::pow(j.sn, 2.0 * c - 2.0);
  }
  return t * j.dn;
}

}  // namespace

std::complex<double> d_integral(double c, double mu, std::complex<double> z,
                                double k2, double rel_tol) {
  if (!(c >= 0.5)) {
    throw std::domain_error("d_integral: requires c >= 1/2");
  }
  if (!(k2 > 0.0 && k2 < 1.0)) {
    throw std::domain_error("d_integral: k2 must lie in (0, 1)");
  }
  const double K = complete_K(k2);
  const double norm = std::tgamma(2.0 * c + 1.0);

  if (z.imag() == 0.0) {
    // cos(sqrt(z) t) is even in sqrt(z), hence real for real z of either
    // sign: cosine for z >= 0, hyperbolic cosine for z < 0.
    const double r = std::sqrt(std::abs(z.real()));
    const bool osc = z.real() >= 0.0;
    const QuadResult q = integrate_singular(
        [&](double u) {
          const double t = r * (K - u);
          const double ker = osc ? std::cos(t) : std::cosh(t);
          return ker * d_weight(jacobi(u, k2), c, mu);
        },
        0.0, K, 0.0, 0.0, d_opts(rel_tol));
    return {q.value / norm, 0.0};
  }

  const std::complex<double> rz = std::sqrt(z);
  const ComplexQuadResult q = integrate_singular_complex(
      [&](double u) -> std::complex<double> {
        return std::cos(rz * (K - u)) * d_weight(jacobi(u, k2), c, mu);
      },
      0.0, K, 0.0, 0.0, d_opts(rel_tol));
  return q.value / norm;
}

SpectralResult stieltjes_d_ratio(const SCRates& r, std::complex<double> z,
                                 double rel_tol) {
  r.validate();
  if (!(r.c >= 0.5)) {
    throw std::domain_error("stieltjes_d_ratio: requires c >= 1/2");
  }
  if (z.imag() == 0.0 && z.real() >= 0.0) {
    throw std::domain_error(
        "stieltjes_d_ratio: z must avoid the non-negative real axis");
  }
  const std::complex<double> num = d_integral(r.c + 1.0, 0.0, z, r.k2, rel_tol);
  const std::complex<double> den = d_integral(r.c, r.mu, z, r.k2, rel_tol);
  SpectralResult out;
  out.z = z;
  out.value = -num / den;
  out.method = SpectralMethod::d_ratio;
  out.err_estimate = 4.0 * rel_tol * std::abs(out.value);
  return out;
}

SpectralResult stieltjes_cf(const SCRates& r, std::complex<double> z,
                            double tol) {
  r.validate();
  if (z.imag() == 0.0 && z.real() >= 0.0) {
    throw std::domain_error(
        "stieltjes_cf: z must avoid the non-negative real axis");
  }
  auto eval_depth = [&](int depth) -> std::complex<double> {
    std::complex<double> t{0.0, 0.0};
    for (int n = depth; n >= 1; --n) {
      const double b2 = r.birth(n - 1) * r.death(n);
      t = b2 / (z - (r.birth(n) + r.death(n)) - t);
    }
    return 1.0 / (z - (r.birth(0) + r.death(0)) - t);
  };

  SpectralResult out;
  out.z = z;
  out.method = SpectralMethod::continued_fraction;
  constexpr int kMaxDepth = 1 << 21;
  std::complex<double> prev = eval_depth(64);
  for (int depth = 128; depth <= kMaxDepth; depth *= 2) {
    const std::complex<double> cur = eval_depth(depth);
    const double diff = std::abs(cur - prev);
    if (diff <= tol * std::abs(cur)) {
      out.value = cur;
      out.err_estimate = diff;
      return out;
    }
    prev = cur;
  }
  throw std::runtime_error(
      "stieltjes_cf: continued fraction failed to stabilize");
}

std::vector<double> moments(const SCRates& r, int n_max) {
  r.validate();
  if (n_max < 0 || n_max > 12) {
    throw std::invalid_argument(
        "moments: order must lie in [0, 12]; higher moments overflow the "
        "useful double range");
  }
  const int n = n_max + 1;
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) {
    diag[i] = r.birth(i) + r.death(i);
    if (i + 1 < n) {
      off[i] = std::sqrt(r.birth(i) * r.death(i + 1));
    }
  }
  std::vector<double> v(n, 0.0), nv(n, 0.0);
  v[0] = 1.0;
  std::vector<double> m(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    m[static_cast<std::size_t>(j)] = v[0];
    if (j + 1 == n) {
      break;
    }
    for (int i = 0; i < n; ++i) {
      double s = diag[i] * v[i];
      if (i > 0) s += off[i - 1] * v[i - 1];
      if (i + 1 < n) s += off[i] * v[i + 1];
      nv[i] = s;
    }
    v.swap(nv);
  }
  return m;
}

}  // namespace heunsc
