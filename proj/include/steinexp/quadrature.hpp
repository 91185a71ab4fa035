#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace steinexp {

/// Raised when adaptive refinement runs out of depth before reaching the
/// requested absolute tolerance; carries the best residual estimate achieved.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& msg, double achieved_residual)
      : std::runtime_error(msg + " (achieved residual " + std::to_string(achieved_residual) + ")"),
        achieved(achieved_residual) {}
  double achieved;
};

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(const F& f, double a, double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (1.0 + std::abs(a)))
    return left + right + delta / 15.0;
  if (depth <= 0)
    throw QuadratureError("adaptive quadrature: depth exhausted", std::abs(delta) / 15.0);
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol, int max_depth = 48) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  double whole = detail::simpson(a, fa, b, fb, fm);
  return detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

/// Mean value of f over [a, b] by 4-point Gauss-Legendre. Used for short
/// intervals where dividing an integral by the interval length would lose
/// precision.
template <typename F>
double gauss4_mean(const F& f, double a, double b) {
  static constexpr double x[4] = {0.06943184420297371, 0.33000947820757187,
                                  0.66999052179242813, 0.93056815579702629};
  static constexpr double w[4] = {0.17392742256872693, 0.32607257743127307,
                                  0.32607257743127307, 0.17392742256872693};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += w[i] * f(a + x[i] * (b - a));
  return acc;
}

}  // namespace steinexp
