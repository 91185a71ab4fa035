#include "steinexp/verification.hpp"

#include <cmath>

#include "steinexp/symbolic_moments.hpp"

namespace steinexp {

std::vector<double> residual_grid() {
  std::vector<double> grid(200);
  for (int k = 1; k <= 200; ++k) grid[k - 1] = 30.0 * k / 200.0;
  return grid;
}

std::vector<double> ratio_grid(const SmoothingParams& p) {
  std::vector<double> grid(200);
  for (int k = 0; k < 200; ++k) grid[k] = 0.01 * std::pow(5000.0, k / 199.0);
  double kinks[3] = {p.t - p.delta, p.t - p.delta / 2.0, p.t};
  for (double& w : grid) {
    double s = 1e-4 * std::max(1.0, w);
    for (double kink : kinks)
      if (kink > 0.0 && std::abs(w - kink) < 1.5 * s) w += 3.0 * s;
  }
  return grid;
}

double fd_residual(const SteinSolution& sol, double w) {
  double s = 1e-5 * std::max(1.0, w);
  double fp = (-sol.value(w + 2 * s) + 8.0 * sol.value(w + s) - 8.0 * sol.value(w - s) +
               sol.value(w - 2 * s)) /
              (12.0 * s);
  double h = sol.test_function().eval(w);
  return w * fp - (w - 1.0) * sol.value(w) - (h - sol.exp_mean());
}

SteinVerifyReport stein_verify(double quad_tol) {
  SteinVerifyReport r;
  auto grid = residual_grid();

  for (const auto& [params, tf] : smoothing_test_family()) {
    // The finite-difference derivative divides quadrature noise by the step,
    // so the residual scan runs the solver well below the 1e-6 criterion.
    SteinSolution sol(tf, std::min(quad_tol, 1e-12));
    for (double w : grid) r.max_residual = std::max(r.max_residual, std::abs(fd_residual(sol, w)));
    auto ratios = verify_solution_bounds(tf, ratio_grid(params), quad_tol);
    r.max_ratio_f = std::max(r.max_ratio_f, ratios.ratio_f);
    r.max_ratio_f_prime = std::max(r.max_ratio_f_prime, ratios.ratio_f_prime);
    r.max_ratio_f_double = std::max(r.max_ratio_f_double, ratios.ratio_f_double_prime);
  }

  {
    TestFunction linear;
    linear.h = [](double x) { return x; };
    linear.h_prime = [](double) { return 1.0; };
    linear.sup_norm_h_prime = 1.0;
    SteinSolution sol(linear, quad_tol);
    for (double w : grid)
      r.max_closed_form_error = std::max(r.max_closed_form_error, std::abs(sol.value(w) + 1.0));
  }
  {
    TestFunction decay;
    decay.h = [](double x) { return std::exp(-x); };
    decay.h_prime = [](double x) { return -std::exp(-x); };
    decay.sup_norm_h_prime = 1.0;
    SteinSolution sol(decay, quad_tol);
    for (double w : grid) {
      double expect = -std::expm1(-w) / (2.0 * w);
      r.max_closed_form_error =
          std::max(r.max_closed_form_error, std::abs(sol.value(w) - expect));
    }
  }

  double slack = 1.0 + 1e-6;
  r.pass = r.max_residual <= 1e-6 && r.max_closed_form_error <= 1e-8 && r.max_ratio_f <= slack &&
           r.max_ratio_f_prime <= slack && r.max_ratio_f_double <= slack;
  return r;
}

namespace {

// All partitions (as multiplicity maps) of total weight <= max_weight.
void gen_partitions(int remaining, int max_part, std::map<int, int>& current,
                    std::vector<std::map<int, int>>& out) {
  out.push_back(current);
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++current[part];
    gen_partitions(remaining - part, part, current, out);
    if (--current[part] == 0) current.erase(part);
  }
}

std::vector<std::map<int, int>> partitions_up_to(int max_weight) {
  std::vector<std::map<int, int>> out;
  std::map<int, int> current;
  gen_partitions(max_weight, max_weight, current, out);
  return out;
}

int weight(const std::map<int, int>& parts) {
  int w = 0;
  for (auto [j, e] : parts) w += j * e;
  return w;
}

}  // namespace

SymbolicVerifyReport symbolic_verify() {
  SymbolicVerifyReport r;
  const IntPoly n = IntPoly::n();
  NPolynomialExpr w = p(1) * pbar(1);

  NPolynomialExpr lap_w = laplacian(w);
  NPolynomialExpr expected_w = NPolynomialExpr::scalar(n * 2) - w * (n * 2);
  r.laplacian_w = lap_w.to_string();
  r.identity_w = lap_w == expected_w;

  NPolynomialExpr lap_w_sq = laplacian(w * w);
  NPolynomialExpr expected_w_sq = (p(1, 2) * pbar(1, 2)) * (n * -4) + (p(2) * pbar(1, 2)) * -2 +
                                  (p(1, 2) * pbar(2)) * -2 + w * (n * 8);
  r.laplacian_w_sq = lap_w_sq.to_string();
  r.identity_w_sq = lap_w_sq == expected_w_sq;

  auto fourth = fourth_moment_coefficient();
  r.fourth_moment = NPolynomialExpr::scalar(fourth.total).to_string();
  r.fourth_zero = fourth.total.is_zero() && fourth.drift_part == IntPoly::monomial(288, 1) &&
                  fourth.second_part == IntPoly::monomial(-288, 1);

  bool moments_ok = true;
  std::int64_t factorial = 1;
  for (int m = 1; m <= 4; ++m) {
    factorial *= m;
    auto v = haar_moment(PowerSumWord::p(1, m) * PowerSumWord::pbar(1, m));
    moments_ok = moments_ok && v && *v == factorial;
  }
  auto parts = partitions_up_to(6);
  for (const auto& pa : parts)
    for (const auto& pb : parts) {
      if (weight(pa) + weight(pb) > 6 || pa == pb) continue;
      PowerSumWord word{pa, pb};
      auto v = haar_moment(word);
      moments_ok = moments_ok && v && *v == 0;
      ++r.mismatched_words_checked;
    }
  r.moments = moments_ok;

  r.pass = r.identity_w && r.identity_w_sq && r.fourth_zero && r.moments;
  return r;
}

}  // namespace steinexp
