#pragma once

namespace heunsc {

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

// Complete elliptic integral of the first kind as a function of the squared
// modulus, K(k2) = pi / (2 agm(1, sqrt(1-k2))).  Requires 0 <= k2 < 1.
double complete_K(double k2);

// Jacobi elliptic functions sn, cn, dn of real argument, squared modulus
// 0 <= k2 < 1, via the descending Landen (AGM) transformation.
JacobiTriple jacobi(double u, double k2);

// Inverse of w = sn^2(theta; k2) on [0, K):
// theta(w) = integral_0^sqrt(w) dt / sqrt((1-t^2)(1-k2 t^2)), 0 <= w < 1.
double theta_of_w(double w, double k2);

// Squared modulus with its quarter period cached.
class Modulus {
 public:
  explicit Modulus(double k2) : k2_(k2), K_(complete_K(k2)) {}
  double k2() const noexcept { return k2_; }
  double K() const noexcept { return K_; }

 private:
  double k2_;
  double K_;
};

}  // namespace heunsc
