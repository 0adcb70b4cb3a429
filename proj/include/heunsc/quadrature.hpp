#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace heunsc {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_depth = 20;   // bisection depth for the adaptive Gauss-Kronrod rule
  int max_levels = 12;  // refinement levels for the tanh-sinh rule
};

// Thrown when a rule exhausts its refinement budget; carries the best
// estimate computed so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, QuadResult best)
      : std::runtime_error(msg), best_(best) {}
  const QuadResult& best_estimate() const noexcept { return best_; }

 private:
  QuadResult best_;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

struct ComplexQuadResult {
  std::complex<double> value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) for integrands smooth in the interior.
QuadResult integrate(const RealFn& f, double a, double b, double tol = 1e-10);
QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts);

// Tanh-sinh rule for integrals with algebraic endpoint weights:
//
//   integral over (a, b) of (x - a)^{p_a} (b - x)^{p_b} f(x) dx
//
// with p_a, p_b > -0.94 and f regular at the endpoints.  (Exponents closer
// to -1 would need abscissae whose endpoint distance underflows; such
// requests are rejected rather than silently losing tail mass.)  The weight
// factors are evaluated from the rule's own endpoint offsets, so they lose
// no accuracy
// near x = a or x = b; pass 0 for a plain endpoint.  Any additional
// integrable singularity built into f itself is also absorbed, provided f
// stays computable near the endpoints.
QuadResult integrate_singular(const RealFn& f, double a, double b, double p,
                              double tol = 1e-10);
QuadResult integrate_singular(const RealFn& f, double a, double b, double p_a,
                              double p_b, const QuadOptions& opts);

// Complex-valued integrand over a real interval: real and imaginary parts
// are integrated separately with the tanh-sinh rule.
ComplexQuadResult integrate_singular_complex(const ComplexFn& f, double a,
                                             double b, double p_a, double p_b,
                                             const QuadOptions& opts);

}  // namespace heunsc
