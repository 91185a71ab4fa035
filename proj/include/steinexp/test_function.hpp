#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace steinexp {

/// Raised when a test function produces a non-finite value; names the abscissa.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A test function h on [0, inf) together with its derivative (supplied or
/// finite-difference) and caller-certified sup norms. The norms are trusted;
/// verify_solution_bounds and the h_{t,delta} norm tests cross-check the ones
/// used in assertions.
struct TestFunction {
  std::function<double(double)> h;
  std::function<double(double)> h_prime;  // optional; empty -> central differences
  double sup_norm_h_prime = 0.0;
  std::optional<double> sup_norm_h_double_prime;

  double eval(double x) const {
    double v = h(x);
    if (!std::isfinite(v))
      throw EvaluationError("test function not finite at x = " + std::to_string(x));
    return v;
  }

  double deriv(double x) const {
    if (h_prime) {
      double v = h_prime(x);
      if (!std::isfinite(v))
        throw EvaluationError("test function derivative not finite at x = " + std::to_string(x));
      return v;
    }
    double step = 1e-6 * std::max(1.0, std::abs(x));
    double lo = std::max(0.0, x - step);
    return (eval(x + step) - eval(lo)) / (x + step - lo);
  }
};

/// Finite-difference cross-check of the caller-certified sup norms over a
/// dense grid of [0, xmax]: true when the certified values dominate the grid
/// maxima up to a 1% allowance. Debug builds of the solver run this and warn.
bool sup_norms_dominate(const TestFunction& tf, double xmax, int points = 10000);

}  // namespace steinexp
