#pragma once

#include <string>
#include <vector>

#include "steinexp/stein.hpp"

namespace steinexp {

/// Full Stein-solution verification over the 12-member shifted smoothing
/// family: differential-equation residuals on a 200-point grid of (0, 30]
/// with an independent finite-difference derivative, the two closed-form
/// solutions, and the three solution-norm ratios.
struct SteinVerifyReport {
  double max_residual = 0.0;          // FD residual, tolerance 1e-6
  double max_closed_form_error = 0.0; // h(x)=x and h(x)=e^{-x}, tolerance 1e-8
  double max_ratio_f = 0.0;           // against (1+2/e)||h'||
  double max_ratio_f_prime = 0.0;     // against 2||h'||
  double max_ratio_f_double = 0.0;    // against (5-6/e)||h'|| + 3||h''||
  bool pass = false;
};
SteinVerifyReport stein_verify(double quad_tol = 1e-9);

/// 200-point residual grid on (0, 30].
std::vector<double> residual_grid();

/// Log grid on [0.01, 50] for norm-ratio scans, nudged so no finite-difference
/// stencil straddles a breakpoint of the given smoothing parameters.
std::vector<double> ratio_grid(const SmoothingParams& p);

/// Residual of the Stein equation at w with f' replaced by a five-point
/// central difference of f (step 1e-5 max(1, w)); independent of the
/// solution's analytic derivative path.
double fd_residual(const SteinSolution& sol, double w);

/// Exact symbolic checks: the two Laplacian identities, the vanishing
/// fourth-moment coefficient, and the Haar moment oracle (E W^m = m! for
/// m = 1..4 plus zero on every mismatched word of degree <= 6).
struct SymbolicVerifyReport {
  std::string laplacian_w;       // rendered Delta(p_1 pbar_1)
  std::string laplacian_w_sq;    // rendered Delta(p_{1,1} pbar_{1,1})
  std::string fourth_moment;     // rendered t-coefficient of E(W'-W)^4
  bool identity_w = false;
  bool identity_w_sq = false;
  bool fourth_zero = false;
  bool moments = false;
  int mismatched_words_checked = 0;
  bool pass = false;
};
SymbolicVerifyReport symbolic_verify();

}  // namespace steinexp
