#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "steinexp/test_function.hpp"

namespace steinexp {

/// Parameters of the piecewise-quadratic smoothing of the indicator
/// 1[x <= t]: threshold t >= 0 and width delta > 0.
struct SmoothingParams {
  double t = 0.0;
  double delta = 1.0;
};

/// The five statistics of an exchangeable pair (W, W') satisfying
/// E[W'-W|F] = -a(W-1) + R that enter the Kolmogorov bound:
///   t1            = E|W - E[(W'-W)^2|F] / (2a)|
///   mean_gap      = |E W - 1|
///   third_abs     = E|W' - W|^3
///   remainder_abs = E|R|
struct PairStats {
  double a = 1.0;
  double t1 = 0.0;
  double mean_gap = 0.0;
  double third_abs = 0.0;
  double remainder_abs = 0.0;

  void validate() const;
};

/// Kolmogorov bound at a given delta with its per-term breakdown; the bound
/// is always the exact sum of the five terms.
struct BoundReport {
  double delta = 0.0;
  double bound = 0.0;
  double t1_term = 0.0;
  double mean_term = 0.0;
  double third_term = 0.0;
  double remainder_term = 0.0;
  double delta_half = 0.0;
};

/// E h(Z) for Z ~ Exp(1): integral of h(x) e^{-x} over [0, inf), adaptive
/// Simpson with tail truncation where the integrand envelope drops below
/// abs_tol / 10.
double exp_expectation(const TestFunction& h, double abs_tol = 1e-9);

/// The characterizing operator w f'(w) - (w-1) f(w) applied at w.
double stein_operator(const std::function<double(double)>& f,
                      const std::function<double(double)>& f_prime, double w);

/// Solution of w f'(w) - (w-1) f(w) = h(w) - E h(Z), evaluated through the
/// cancellation-free form
///   f(w) = -(1-e^{-w})/w * I(w) + (1/w) * int_0^w h(x) e^{-x} dx,
///   I(w) = int_0^inf h(w+u) e^{-u} du,
/// with series / Gauss handling below w = 1e-4 and the w -> 0 limits
/// f(0) = h(0) - Eh(Z), f'(0) = (h'(0) + f(0)) / 2.
class SteinSolution {
 public:
  SteinSolution(TestFunction h, double abs_tol);

  double value(double w) const;       // f(w)
  double derivative(double w) const;  // f'(w), from the differential equation
  double exp_mean() const { return exp_mean_; }
  double tolerance() const { return tol_; }
  const TestFunction& test_function() const { return h_; }

  /// Residual of the differential equation at w using the solution's own
  /// evaluators (diagnostic; near machine precision away from w ~ 0).
  double residual(double w) const;

  /// Batch evaluation of f and f' on an ascending grid of sample points,
  /// computed by forward/backward quadrature sweeps; O(total grid length)
  /// instead of one adaptive integral per point.
  struct BatchValues {
    std::vector<double> f;
    std::vector<double> f_prime;
  };
  BatchValues evaluate_sorted(std::span<const double> ws) const;

 private:
  double upper_integral(double w) const;  // I(w)
  double lower_mean(double w) const;      // (1/w) int_0^w h e^{-x}

  TestFunction h_;
  double tol_;
  double exp_mean_;
  double h_at_zero_;
};

SteinSolution solve_stein(TestFunction h, double abs_tol = 1e-9);

/// The smoothing function h_{t,delta}(x): 1 below t-delta, 0 above t, with
/// two matched quadratic pieces in between; C^1 with norms
/// ||h'|| = 2/delta, ||h''|| = 4/delta^2.
double smoothing_h(const SmoothingParams& p, double x);
double smoothing_h_prime(const SmoothingParams& p, double x);

/// h_{t,delta} packaged as a TestFunction, shifted so that h(0) = 0 and
/// h'(0) = 0 (subtracting h(0) + x h'(0)), with its exact sup norms.
TestFunction shifted_smoothing(const SmoothingParams& p);

/// Smooth-test-function bound:
///   4||h'|| t1 + ||h'|| mean_gap
///   + (2(5-6/e)||h'|| + 3||h''||) third_abs / (4a) + 4||h'|| remainder_abs / a.
double smooth_bound(const PairStats& stats, double h_prime_norm, double h_double_prime_norm);

/// Kolmogorov bound:
///   (8/d) t1 + (2/d) mean_gap + ((5-6/e)/d + 3/d^2) third_abs / a
///   + (8/d) remainder_abs / a + d/2.
BoundReport kolmogorov_bound(const PairStats& stats, double delta);

/// Minimizes the Kolmogorov bound over delta. Collecting coefficients as
/// A/delta + B/delta^2 + delta/2: closed form sqrt(2A) when B = 0, otherwise
/// bisection on the stationarity condition delta^3/2 = A delta + 2B. All
/// statistics zero returns the (0, zero-bound) convention.
std::pair<double, BoundReport> optimize_delta(const PairStats& stats);

/// Max ratios of the measured norms of f, f', f'' against the bounds
/// (1+2/e)||h'||, 2||h'||, (5-6/e)||h'|| + 3||h''||. Requires h(0) = 0 and
/// h'(0) = 0; f'' is obtained by central differences of the analytic f' with
/// step 1e-4 * max(1, w).
struct SolutionBoundReport {
  double ratio_f = 0.0;
  double ratio_f_prime = 0.0;
  double ratio_f_double_prime = 0.0;
  double max_abs_f = 0.0;
  double max_abs_f_prime = 0.0;
  double max_abs_f_double_prime = 0.0;
};
SolutionBoundReport verify_solution_bounds(const TestFunction& h, std::span<const double> grid,
                                           double abs_tol = 1e-9);

/// The 12-member shifted smoothing family (t in {0.5, 1, 2, 4} x delta in
/// {0.1, 0.5, 1}) used by the solution-verification suites.
std::vector<std::pair<SmoothingParams, TestFunction>> smoothing_test_family();

}  // namespace steinexp
