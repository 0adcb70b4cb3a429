#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "heunsc/stieltjes.hpp"

using namespace heunsc;

TEST_CASE("rate formulas and validation") {
  SCRates r{0.75, 1.0, 0.5};
  CHECK(r.birth(0) == doctest::Approx(0.5 * 2.5 * 2.5));
  CHECK(r.birth(3) == doctest::Approx(0.5 * 8.5 * 8.5));
  CHECK(r.death(0) == doctest::Approx(4.0 * 0.5625 + 1.0));
  CHECK(r.death(2) == doctest::Approx(4.0 * 2.75 * 2.75));
  CHECK_NOTHROW(r.validate());
  CHECK_THROWS_AS((SCRates{-0.1, 0.0, 0.5}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((SCRates{0.75, -1.0, 0.5}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((SCRates{0.75, 0.0, 0.0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((SCRates{0.75, 0.0, 1.0}.validate()),
                  std::invalid_argument);
}

TEST_CASE("moments against hand-computed values") {
  SCRates r{0.75, 0.0, 0.5};
  std::vector<double> m = moments(r, 4);
  const double a0 = r.birth(0) + r.death(0);
  const double b1 = std::sqrt(r.birth(0) * r.death(1));
  const double a1 = r.birth(1) + r.death(1);
  CHECK(m[0] == 1.0);
  CHECK(m[1] == a0);                    // 5.375, exact arithmetic
  CHECK(m[1] == doctest::Approx(5.375));
  CHECK(m[2] == doctest::Approx(a0 * a0 + b1 * b1).epsilon(1e-15));
  CHECK(m[2] == doctest::Approx(67.171875).epsilon(1e-15));
  CHECK(m[3] ==
        doctest::Approx(a0 * a0 * a0 + b1 * b1 * (2.0 * a0 + a1))
            .epsilon(1e-14));
  CHECK(m[3] == doctest::Approx(1423.353515625).epsilon(1e-14));
  CHECK(m[4] == doctest::Approx(45715.845).epsilon(1e-7));

  // mu enters only the lowest death rate: m1 shifts by exactly mu.
  SCRates rm{0.75, 1.0, 0.5};
  CHECK(moments(rm, 1)[1] == doctest::Approx(a0 + 1.0).epsilon(1e-15));

  CHECK_THROWS_AS(moments(r, -1), std::invalid_argument);
  CHECK_THROWS_AS(moments(r, 13), std::invalid_argument);
}

TEST_CASE("characteristic integral domain") {
  CHECK_THROWS_AS(d_integral(0.4, 0.0, {-1.0, 0.0}, 0.5),
                  std::domain_error);
  // At c = 1/2 the singular term has a vanishing coefficient.
  std::complex<double> v = d_integral(0.5, 0.3, {-1.0, 0.0}, 0.5);
  CHECK(std::isfinite(v.real()));
  CHECK(v.imag() == 0.0);
}

TEST_CASE("both spectral methods agree off the spectrum") {
  for (double c : {0.6, 0.75, 1.5}) {
    for (double mu : {0.0, 1.0}) {
      for (double k2 : {0.25, 0.81}) {
        SCRates r{c, mu, k2};
        for (double z : {-0.5, -10.0}) {
          SpectralResult a = stieltjes_d_ratio(r, {z, 0.0});
          SpectralResult b = stieltjes_cf(r, {z, 0.0});
          CHECK(a.value.imag() == 0.0);
          CHECK(a.value.real() < 0.0);  // measure on [0, inf), z < 0
          CHECK(std::abs(a.value - b.value) / std::abs(b.value) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("complex arguments give conjugate-symmetric values") {
  SCRates r{0.75, 1.0, 0.5};
  const std::complex<double> z{2.0, 1.5};
  SpectralResult up = stieltjes_d_ratio(r, z);
  SpectralResult dn = stieltjes_d_ratio(r, std::conj(z));
  CHECK(up.value.real() == doctest::Approx(dn.value.real()).epsilon(1e-10));
  CHECK(up.value.imag() ==
        doctest::Approx(-dn.value.imag()).epsilon(1e-10));
  // -S is the Herglotz side in this sign convention: Im S(z) < 0 above the
  // real axis.
  CHECK(up.value.imag() < 0.0);

  SpectralResult cf = stieltjes_cf(r, z);
  CHECK(std::abs(up.value - cf.value) / std::abs(cf.value) <= 1e-6);
}

TEST_CASE("spectral arguments on the measure support are rejected") {
  SCRates r{0.75, 0.0, 0.5};
  CHECK_THROWS_AS(stieltjes_d_ratio(r, {4.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(stieltjes_cf(r, {4.0, 0.0}), std::domain_error);
}

TEST_CASE("numerator reduces to the unweighted integral") {
  // D(c+1, 0; z) carries no singular term and no mu: it must equal the
  // plain convolution of dn (sn^2)^c computed directly.
  for (double c : {0.6, 1.5}) {
    for (double k2 : {0.25, 0.81}) {
      const std::complex<double> z{-1.0, 0.0};
      const std::complex<double> lhs = d_integral(c + 1.0, 0.0, z, k2);
      // Shifted-index value via the ratio identity: S = -num/den.
      SCRates r{c, 0.0, k2};
      const std::complex<double> den = d_integral(c, 0.0, z, k2);
      const std::complex<double> s = stieltjes_d_ratio(r, z).value;
      CHECK(std::abs(lhs + s * den) <= 1e-10 * std::abs(lhs));
    }
  }
}

TEST_CASE("transform behaves like 1/z at infinity") {
  SCRates r{0.75, 1.0, 0.5};
  const double z = -1e6;
  SpectralResult s = stieltjes_cf(r, {z, 0.0});
  // 1/S = z - a0 + O(1/z).
  const double a0 = r.birth(0) + r.death(0);
  CHECK(std::abs(1.0 / s.value.real() - z + a0) <= 1e-3 * std::abs(z));
}

TEST_CASE("laurent tail from the moments") {
  SCRates r{0.75, 0.0, 0.5};
  std::vector<double> m = moments(r, 4);
  const double p = 100.0;
  const double s = -stieltjes_d_ratio(r, {-p, 0.0}).value.real();
  // -S(-p) = integral dmu(x)/(p+x) = sum (-1)^j m_j / p^{j+1}.
  double expansion = 0.0;
  for (int j = 0; j <= 3; ++j) {
    expansion +=
        (j % 2 == 0 ? 1.0 : -1.0) * m[static_cast<std::size_t>(j)] /
        std::pow(p, j + 1);
  }
  // The truncation error is dominated by the first omitted term m4/p^5.
  CHECK(std::abs(s - expansion) <= 2.0 * m[4] / std::pow(p, 5));
  // Total mass recovered at large p: p(-S(-p)) -> 1.
  const double pm = 1e4;
  const double mass = pm * -stieltjes_d_ratio(r, {-pm, 0.0}).value.real();
  CHECK(std::abs(mass - 1.0) <= 1e-2);
  CHECK(mass == doctest::Approx(0.9994631703).epsilon(1e-6));
}
