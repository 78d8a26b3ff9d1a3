#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace moduli {

/// Thrown when adaptive quadrature cannot reach the requested tolerance
/// within its evaluation budget.
class quadrature_budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // conservative; >= 0
  std::uint64_t evaluations = 0;
};

struct QuadratureOptions {
  double tol = 1e-10;                  // absolute tolerance target
  std::uint64_t max_evaluations = 50'000'000;
  // Integrable endpoint singularities (log or algebraic). When set, the
  // integral is computed under the substitution x = a + e^{-u} (resp.
  // b - e^{-u}), which turns log-type endpoint behaviour into a smooth,
  // exponentially decaying integrand.
  bool log_singular_left = false;
  bool log_singular_right = false;
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts = {});

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol);

// Dilogarithm Li2(x) = sum x^n / n^2 for |x| <= 1.
double dilog(double x);

// Catalan's constant G = sum (-1)^n / (2n+1)^2.
double catalan_constant();

// The Lerch value Phi(-1/3, 2, 1/2) = 4 sum (-1)^n / (3^n (2n+1)^2).
double lerch_special();

}  // namespace moduli
