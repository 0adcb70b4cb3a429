#pragma once

#include <complex>
#include <vector>

namespace heunsc {

// Birth-death rates of the associated Stieltjes-Carlitz chain:
//   birth_n = k2 (2n + 2c + 1)^2,  death_n = 4 (n + c)^2 + mu [n = 0].
struct SCRates {
  double c = 0.0;
  double mu = 0.0;
  double k2 = 0.0;

  double birth(int n) const noexcept;
  double death(int n) const noexcept;
  void validate() const;  // c >= 0, mu >= 0, 0 < k2 < 1
};

// D(c, mu; z) = integral_0^K cos(sqrt(z)(K-u))
//                 (2c(2c-1) + mu sn^2 u) dn u (sn^2 u)^(c-1) du / Gamma(2c+1)
// Entire in z (cos is even in sqrt(z)); requires c >= 1/2 (at c = 1/2 the
// singular term carries a vanishing coefficient and is dropped).
std::complex<double> d_integral(double c, double mu, std::complex<double> z,
                                double k2, double rel_tol = 1e-12);

enum class SpectralMethod { d_ratio, continued_fraction };

struct SpectralResult {
  std::complex<double> z{0.0, 0.0};
  std::complex<double> value{0.0, 0.0};
  SpectralMethod method = SpectralMethod::d_ratio;
  double err_estimate = 0.0;
};

// Stieltjes transform of the orthogonality measure,
//   S(z) = -D(c+1, 0; z) / D(c, mu; z),  c > 1/2, z off [0, inf).
SpectralResult stieltjes_d_ratio(const SCRates& r, std::complex<double> z,
                                 double rel_tol = 1e-12);

// Same transform by the Jacobi continued fraction
//   S(z) = 1 / (z - a_0 - b_1^2 / (z - a_1 - ...)),
// a_n = birth_n + death_n, b_n^2 = birth_{n-1} death_n, evaluated backward
// with doubling depth until two consecutive depths agree to tol.
SpectralResult stieltjes_cf(const SCRates& r, std::complex<double> z,
                            double tol = 1e-13);

// Power moments m_j = (e_0, T^j e_0) of the tridiagonal operator.
std::vector<double> moments(const SCRates& r, int n_max);

}  // namespace heunsc
