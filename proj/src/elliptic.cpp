#include "heunsc/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "heunsc/quadrature.hpp"

namespace heunsc {
namespace {

void check_k2(double k2, const char* who) {
  if (!(k2 >= 0.0 && k2 < 1.0)) {
    throw std::domain_error(std::string(who) +
                            ": squared modulus must lie in [0, 1)");
  }
}

}  // namespace

double complete_K(double k2) {
  check_k2(k2, "complete_K");
  double a = 1.0;
  double b = std::sqrt(1.0 - k2);
  // AGM iteration; quadratic convergence, exact at k2 = 0.
  while (std::abs(a - b) > 2.0 * std::numeric_limits<double>::epsilon() * a) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

JacobiTriple jacobi(double u, double k2) {
  check_k2(k2, "jacobi");
  JacobiTriple r;
  const double mc = 1.0 - k2;
  if (k2 == 0.0) {
    r.sn = std::sin(u);
    r.cn = std::cos(u);
    r.dn = 1.0;
    return r;
  }
  // Descending Landen transformation driven by the AGM chain; the recovery
  // loop below restores sn, cn, dn from the circular functions of the
  // transformed argument.  Chain tolerance sqrt(eps) yields full double
  // precision in the result.
  constexpr double kTol = 1.5e-8;
  double em[16], en[16];
  double a = 1.0;
  double dn = 1.0;
  double emc = mc;
  double c = 0.0;
  int l = 0;
  for (int i = 0; i < 16; ++i) {
    l = i;
    em[i] = a;
    emc = std::sqrt(emc);
    en[i] = emc;
    c = 0.5 * (a + emc);
    if (std::abs(a - emc) <= kTol * a) {
      break;
    }
    emc *= a;
    a = c;
  }
  const double uu = c * u;
  double sn = std::sin(uu);
  double cn = std::cos(uu);
  if (sn != 0.0) {
    a = cn / sn;
    c *= a;
    for (int i = l; i >= 0; --i) {
      const double b = em[i];
      a *= c;
      c *= dn;
      dn = (en[i] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn >= 0.0 ? a : -a;
    cn = c * sn;
  }
  r.sn = sn;
  r.cn = cn;
  r.dn = dn;
  return r;
}

double theta_of_w(double w, double k2) {
  check_k2(k2, "theta_of_w");
  if (!(w >= 0.0 && w < 1.0)) {
    throw std::domain_error("theta_of_w: w must lie in [0, 1)");
  }
  if (w == 0.0) {
    return 0.0;
  }
  // Substitution t = sqrt(w) s maps the defining integral onto [0, 1].
  const double rw = std::sqrt(w);
  QuadOptions opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-13;
  opts.max_levels = 14;
  QuadResult q = integrate_singular(
      [&](double s) {
        const double t2 = w * s * s;
        return rw / std::sqrt((1.0 - t2) * (1.0 - k2 * t2));
      },
      0.0, 1.0, 0.0, 0.0, opts);
  return q.value;
}

}  // namespace heunsc
