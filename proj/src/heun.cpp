#include "heunsc/heun.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

namespace heunsc {
namespace {

bool near_nonpositive_integer(double x, double tol = 1e-12) {
  if (x > 0.5) {
    return false;
  }
  const double r = std::round(x);
  return r <= 0.0 && std::abs(x - r) <= tol;
}

void require(bool ok, const std::string& msg) {
  if (!ok) {
    throw std::invalid_argument(msg);
  }
}

std::uint64_t fnv1a(const double* data, std::size_t n) {
  std::uint64_t h = 1469598103934665603ull;
  const unsigned char* bytes = reinterpret_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n * sizeof(double); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

void HeunParams::validate() const {
  require(std::abs(fuchs_residual()) <= 1e-12,
          "HeunParams: exponent sum constraint alpha+beta = "
          "gamma+delta+eps-1 violated");
  require(k2 >= 0.0 && k2 <= 1.0, "HeunParams: k2 must lie in [0, 1]");
  require(!near_nonpositive_integer(gamma),
          "HeunParams: gamma must not be a non-positive integer");
}

void AssocParams::validate() const {
  base.validate();
  require(!near_nonpositive_integer(1.0 + c),
          "AssocParams: 1 + c must not be a non-positive integer");
  require(!near_nonpositive_integer(base.gamma + c),
          "AssocParams: gamma + c must not be a non-positive integer");
}

RateTriple heun_rates(const HeunParams& p, int n) {
  RateTriple r;
  r.birth = p.k2 * (n + p.alpha) * (n + p.beta);
  r.death = n * (n + p.gamma - 1.0);
  r.kill = (1.0 - p.k2) * p.delta * n;
  return r;
}

RateTriple assoc_rates(const AssocParams& a, int n) {
  const HeunParams& p = a.base;
  const double nc = n + a.c;
  RateTriple r;
  r.birth = p.k2 * (nc + p.alpha) * (nc + p.beta);
  r.death = nc * (nc + p.gamma - 1.0) + (n == 0 ? a.mu : 0.0);
  r.kill = (1.0 - p.k2) * p.delta * nc;
  return r;
}

std::uint64_t params_hash(const AssocParams& a) {
  const double vals[9] = {a.base.alpha, a.base.beta, a.base.gamma,
                          a.base.delta, a.base.eps,  a.base.s,
                          a.base.k2,    a.c,          a.mu};
  return fnv1a(vals, 9);
}

CoeffSeries assoc_coeffs(const AssocParams& a, int n_max) {
  a.validate();
  require(n_max >= 0, "assoc_coeffs: order must be non-negative");
  const HeunParams& p = a.base;
  const double shift =
      p.s + (p.alpha + a.c) * (p.beta + a.c) * p.k2 - p.k2 * p.delta * a.c;

  CoeffSeries s;
  s.params_hash = params_hash(a);
  s.coeffs.resize(static_cast<std::size_t>(n_max) + 1);
  s.coeffs[0] = 1.0;
  for (int n = 0; n < n_max; ++n) {
    const RateTriple r = assoc_rates(a, n);
    double rhs = (r.birth + r.death + r.kill - shift) * s.coeffs[n];
    if (n >= 1) {
      rhs -= assoc_rates(a, n - 1).birth * s.coeffs[n - 1];
    }
    const double div = assoc_rates(a, n + 1).death;
    if (std::abs(div) < 1e-300) {
      throw std::invalid_argument(
          "assoc_coeffs: recurrence divisor vanishes at n = " +
          std::to_string(n + 1));
    }
    s.coeffs[n + 1] = rhs / div;
  }
  return s;
}

CoeffSeries heun_coeffs(const HeunParams& p, int n_max) {
  AssocParams a;
  a.base = p;
  return assoc_coeffs(a, n_max);
}

CoeffSeries series_to_tol(const AssocParams& a, double tol, double r_max) {
  require(tol > 0.0 && r_max > 0.0 && r_max < 1.0,
          "series_to_tol: need tol > 0 and 0 < r_max < 1");
  int n = 64;
  constexpr int kMaxOrder = 1 << 15;
  while (true) {
    CoeffSeries s = assoc_coeffs(a, n);
    bool ok = true;
    double rn = std::pow(r_max, n - 9);
    for (int j = n - 9; j <= n; ++j, rn *= r_max) {
      if (std::abs(s.coeffs[static_cast<std::size_t>(j)]) * rn > tol) {
        ok = false;
        break;
      }
    }
    if (ok) {
      return s;
    }
    if (n >= kMaxOrder) {
      throw std::runtime_error(
          "series_to_tol: truncation order exceeded without tail decay");
    }
    n *= 2;
  }
}

SeriesValue eval_series_full(const CoeffSeries& s, double w, double r_max) {
  if (!(std::abs(w) <= r_max)) {
    throw std::domain_error("eval_series: |w| exceeds the evaluation radius");
  }
  SeriesValue out;
  out.terms = static_cast<int>(s.coeffs.size());
  double wn = 1.0;
  double sum = 0.0;
  double last_mag = 0.0;
  const std::size_t n = s.coeffs.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double term = s.coeffs[j] * wn;
    sum += term;
    if (j + 10 >= n) {
      last_mag = std::max(last_mag, std::abs(term));
    }
    wn *= w;
  }
  out.value = sum;
  const double aw = std::abs(w);
  out.tail_estimate = aw < 1.0 ? last_mag * aw / (1.0 - aw) : last_mag;
  return out;
}

double eval_series(const CoeffSeries& s, double w, double r_max) {
  return eval_series_full(s, w, r_max).value;
}

double pochhammer(double x, int n) {
  double r = 1.0;
  for (int j = 0; j < n; ++j) {
    r *= x + j;
  }
  return r;
}

std::vector<double> monic_coeffs(const CoeffSeries& s, double c,
                                 double gamma) {
  std::vector<double> g(s.coeffs.size());
  double poch1 = 1.0;  // (1+c)_n
  double pochg = 1.0;  // (gamma+c)_n
  for (std::size_t n = 0; n < g.size(); ++n) {
    g[n] = poch1 * pochg * s.coeffs[n];
    poch1 *= 1.0 + c + static_cast<double>(n);
    pochg *= gamma + c + static_cast<double>(n);
  }
  return g;
}

AssocParams map_alpha_gamma_swap(const AssocParams& a) {
  AssocParams out = a;
  const HeunParams& p = a.base;
  out.base.alpha = p.gamma;
  out.base.gamma = p.alpha;
  out.base.delta = p.delta + p.gamma - p.alpha;
  out.base.eps = p.eps + p.gamma - p.alpha;
  return out;
}

AssocParams map_beta_gamma_swap(const AssocParams& a) {
  AssocParams out = a;
  const HeunParams& p = a.base;
  out.base.beta = p.gamma;
  out.base.gamma = p.beta;
  out.base.delta = p.delta + p.gamma - p.beta;
  out.base.eps = p.eps + p.gamma - p.beta;
  return out;
}

AssocParams map_alpha_shift(const AssocParams& a) {
  AssocParams out = a;
  const HeunParams& p = a.base;
  const double d = 1.0 - p.alpha;
  out.base.alpha = 2.0 - p.alpha;
  out.base.beta = p.beta + d;
  out.base.gamma = p.gamma + d;
  out.base.delta = p.delta + d;
  out.base.eps = p.eps + d;
  out.base.s = p.s + (p.alpha - 1.0) * (p.gamma + p.delta - p.alpha);
  out.c = a.c + p.alpha - 1.0;
  return out;
}

AssocParams map_beta_shift(const AssocParams& a) {
  AssocParams out = a;
  const HeunParams& p = a.base;
  const double d = 1.0 - p.beta;
  out.base.beta = 2.0 - p.beta;
  out.base.alpha = p.alpha + d;
  out.base.gamma = p.gamma + d;
  out.base.delta = p.delta + d;
  out.base.eps = p.eps + d;
  out.base.s = p.s + (p.beta - 1.0) * (p.gamma + p.delta - p.beta);
  out.c = a.c + p.beta - 1.0;
  return out;
}

HeunParams reduction_params(const HeunParams& p) {
  HeunParams out = p;
  const double d = 1.0 - p.gamma;
  out.alpha = p.alpha + d;
  out.beta = p.beta + d;
  out.gamma = 2.0 - p.gamma;
  out.s = p.s - d * p.delta;
  return out;
}

std::complex<double> hyp2f1(std::complex<double> a, std::complex<double> b,
                            double c, double w) {
  if (std::abs(w) >= 1.0) {
    throw std::domain_error("hyp2f1: series requires |w| < 1");
  }
  if (near_nonpositive_integer(c)) {
    throw std::invalid_argument(
        "hyp2f1: lower parameter must not be a non-positive integer");
  }
  std::complex<double> term{1.0, 0.0};
  std::complex<double> sum{1.0, 0.0};
  constexpr int kMaxTerms = 20000;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) * w / ((c + dn) * (dn + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * (1.0 + std::abs(sum)) && n > 4) {
      return sum;
    }
  }
  throw std::runtime_error("hyp2f1: series failed to converge");
}

namespace {

double real_checked(std::complex<double> v, const char* who) {
  const double scale = std::max(1.0, std::abs(v.real()));
  if (std::abs(v.imag()) > 1e-12 * scale) {
    throw std::runtime_error(std::string(who) +
                             ": imaginary residue exceeds tolerance");
  }
  return v.real();
}

}  // namespace

double heun_hyp_k0(const HeunParams& p, double w) {
  p.validate();
  if (p.k2 != 0.0) {
    throw std::domain_error("heun_hyp_k0: closed form requires k2 = 0");
  }
  const double a = 0.5 * (p.gamma + p.delta - 1.0);
  const std::complex<double> root = std::sqrt(std::complex<double>(
      a * a + p.s, 0.0));
  const std::complex<double> rp = a + root;
  const std::complex<double> rm = a - root;
  return real_checked(hyp2f1(rp, rm, p.gamma, w), "heun_hyp_k0");
}

double heun_hyp_k1(const HeunParams& p, double w) {
  p.validate();
  if (p.k2 != 1.0) {
    throw std::domain_error("heun_hyp_k1: closed form requires k2 = 1");
  }
  const double a = 0.5 * (p.gamma - p.alpha - p.beta);
  const std::complex<double> r = a + std::sqrt(std::complex<double>(
      a * a - p.alpha * p.beta - p.s, 0.0));
  const std::complex<double> pref =
      std::exp(r * std::log1p(-w));  // (1-w)^r, w < 1
  return real_checked(pref * hyp2f1(r + p.alpha, r + p.beta, p.gamma, w),
                      "heun_hyp_k1");
}

double ode_residual(const AssocParams& a, const CoeffSeries& s, double w) {
  if (!(w > 0.0 && w <= 0.9)) {
    throw std::domain_error("ode_residual: w must lie in (0, 0.9]");
  }
  const HeunParams& p = a.base;
  double f0 = 0.0, f1 = 0.0, f2 = 0.0;
  double wn = 1.0;  // w^n
  const std::size_t n = s.coeffs.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double dj = static_cast<double>(j);
    const double cj = s.coeffs[j];
    f0 += cj * wn;
    if (j >= 1) {
      f1 += cj * dj * wn / w;
    }
    if (j >= 2) {
      f2 += cj * dj * (dj - 1.0) * wn / (w * w);
    }
    wn *= w;
  }

  const double om_w = 1.0 - w;
  const double om_kw = 1.0 - p.k2 * w;
  const double cc = a.c * (a.c + p.gamma - 1.0);
  const double t1 = w * om_w * om_kw * f2;
  const double t2 = ((p.gamma + 2.0 * a.c) * om_w * om_kw -
                     p.delta * w * om_kw - p.eps * p.k2 * w * om_w) *
                    f1;
  const double t3 = ((p.alpha + a.c) * (p.beta + a.c) * p.k2 * w + p.s -
                     p.delta * a.c) *
                    f0;
  // The 1/w terms are combined so the pole cancels analytically:
  // cc (1-w) f0 / w - (cc / w + mu) = cc ((1-w) f0 - 1) / w - mu.
  const double t4 = cc * (om_w * f0 - 1.0) / w - a.mu;
  const double resid = t1 + t2 + t3 + t4;
  const double scale =
      std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), 1.0});
  return std::abs(resid) / scale;
}

}  // namespace heunsc
