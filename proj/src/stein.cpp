#include "steinexp/stein.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "steinexp/quadrature.hpp"

namespace steinexp {

namespace {

constexpr double kSeriesCutoff = 1e-4;  // series for (1-e^{-w})/w below this
constexpr double kDirectCutoff = 1e-3;  // direct quadrature of the lower integral above this
// 5 - 6/e: the ||h'|| coefficient in the second-derivative bound and the
// 1/delta coefficient of the third-moment term
const double kSecondDerivCoeff = 5.0 - 6.0 / std::exp(1.0);

// (1 - e^{-w}) / w
double one_minus_exp_over(double w) {
  if (w < kSeriesCutoff)
    return 1.0 + w * (-1.0 / 2 + w * (1.0 / 6 + w * (-1.0 / 24 + w / 120)));
  return -std::expm1(-w) / w;
}

// c(w) = (e^w - 1)/w - (e^w - 1 - w)/w^2 = sum_k w^k (k+1)/(k+2)!,
// needed only for small w.
double small_w_c(double w) {
  double acc = 0.0, pw = 1.0, fact = 2.0;  // fact = (k+2)! running
  for (int k = 0; k <= 8; ++k) {
    acc += pw * (k + 1) / fact;
    pw *= w;
    fact *= k + 3;
  }
  return acc;
}

// Truncation point X with e^{-X} (|h0| + hp * X) below target.
double tail_cutoff(double h0, double hp, double target) {
  double x = 25.0;
  while (x < 800.0 && std::exp(-x) * (std::abs(h0) + hp * x + 1e-300) >= target) x += 5.0;
  return x;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " is not finite");
}

}  // namespace

void PairStats::validate() const {
  for (double v : {a, t1, mean_gap, third_abs, remainder_abs}) require_finite(v, "pair statistic");
  if (a <= 0.0) throw std::invalid_argument("pair statistics: a must be positive");
  if (t1 < 0 || mean_gap < 0 || third_abs < 0 || remainder_abs < 0)
    throw std::invalid_argument("pair statistics must be nonnegative");
}

double exp_expectation(const TestFunction& h, double abs_tol) {
  double h0 = h.eval(0.0);
  double cut = tail_cutoff(h0, h.sup_norm_h_prime, abs_tol / 10.0);
  return adaptive_simpson([&](double x) { return h.eval(x) * std::exp(-x); }, 0.0, cut, abs_tol);
}

double stein_operator(const std::function<double(double)>& f,
                      const std::function<double(double)>& f_prime, double w) {
  if (w < 0.0) throw std::invalid_argument("stein_operator: w must be nonnegative");
  double fv = f(w), fp = f_prime(w);
  require_finite(fv, "f(w)");
  require_finite(fp, "f'(w)");
  return w * fp - (w - 1.0) * fv;
}

bool sup_norms_dominate(const TestFunction& tf, double xmax, int points) {
  double step = xmax / points;
  double max_d1 = 0.0, max_d2 = 0.0;
  for (int k = 1; k < points; ++k) {
    double x = k * step;
    double hm = tf.eval(x - step), h0 = tf.eval(x), hp = tf.eval(x + step);
    max_d1 = std::max(max_d1, std::abs((hp - hm) / (2.0 * step)));
    max_d2 = std::max(max_d2, std::abs((hp - 2.0 * h0 + hm) / (step * step)));
  }
  if (max_d1 > 1.01 * tf.sup_norm_h_prime) return false;
  if (tf.sup_norm_h_double_prime && max_d2 > 1.01 * *tf.sup_norm_h_double_prime) return false;
  return true;
}

SteinSolution::SteinSolution(TestFunction h, double abs_tol) : h_(std::move(h)), tol_(abs_tol) {
  if (!(tol_ > 0)) throw std::invalid_argument("quadrature tolerance must be positive");
  h_at_zero_ = h_.eval(0.0);
  exp_mean_ = exp_expectation(h_, tol_);
#ifndef NDEBUG
  if (!sup_norms_dominate(h_, 50.0))
    std::fprintf(stderr, "warning: certified sup norms undershoot a grid scan by >1%%\n");
#endif
}

double SteinSolution::upper_integral(double w) const {
  // |h(w+u)| <= (|h(0)| + ||h'|| w) + ||h'|| u
  double base = std::abs(h_at_zero_) + h_.sup_norm_h_prime * w;
  double cut = tail_cutoff(base, h_.sup_norm_h_prime, std::min(tol_ / 10.0, 1e-12));
  return adaptive_simpson([&](double u) { return h_.eval(w + u) * std::exp(-u); }, 0.0, cut, tol_);
}

double SteinSolution::lower_mean(double w) const {
  if (w == 0.0) return h_at_zero_;
  auto g = [&](double x) { return h_.eval(x) * std::exp(-x); };
  if (w < kDirectCutoff) return gauss4_mean(g, 0.0, w);
  return adaptive_simpson(g, 0.0, w, tol_ * std::min(w, 1.0)) / w;
}

double SteinSolution::value(double w) const {
  if (w < 0.0) throw std::invalid_argument("Stein solution evaluated at negative w");
  if (w == 0.0) return h_at_zero_ - exp_mean_;
  return -one_minus_exp_over(w) * upper_integral(w) + lower_mean(w);
}

double SteinSolution::derivative(double w) const {
  if (w < 0.0) throw std::invalid_argument("Stein solution evaluated at negative w");
  if (w == 0.0) return 0.5 * (h_.deriv(0.0) + h_at_zero_ - exp_mean_);
  if (w >= kDirectCutoff) return (h_.eval(w) - exp_mean_ + (w - 1.0) * value(w)) / w;
  // Small w: both difference quotients evaluated without cancellation,
  //   f'(w) = (1/w^2) int_0^w [h(w) - h(x)e^{-x}] dx - c(w) e^{-w} I(w).
  double hw = h_.eval(w);
  double mean_phi = gauss4_mean([&](double x) { return hw - h_.eval(x) * std::exp(-x); }, 0.0, w);
  return mean_phi / w - small_w_c(w) * std::exp(-w) * upper_integral(w);
}

double SteinSolution::residual(double w) const {
  return w * derivative(w) - (w - 1.0) * value(w) - (h_.eval(w) - exp_mean_);
}

SteinSolution::BatchValues SteinSolution::evaluate_sorted(std::span<const double> ws) const {
  const std::size_t n = ws.size();
  BatchValues out;
  out.f.resize(n);
  out.f_prime.resize(n);
  if (n == 0) return out;
  for (std::size_t i = 1; i < n; ++i)
    if (ws[i] < ws[i - 1])
      throw std::invalid_argument("evaluate_sorted: grid must be ascending");
  if (ws[0] < 0.0) throw std::invalid_argument("evaluate_sorted: grid must be nonnegative");

  std::size_t k0 = 0;
  while (k0 < n && ws[k0] < kDirectCutoff) ++k0;
  for (std::size_t i = 0; i < k0; ++i) {
    out.f[i] = value(ws[i]);
    out.f_prime[i] = derivative(ws[i]);
  }
  if (k0 == n) return out;

  auto integrand = [&](double x) { return h_.eval(x) * std::exp(-x); };
  const double gap_tol = 1e-12;

  // Backward sweep for I(w) = int_0^inf h(w+u) e^{-u} du:
  //   I(w_i) = e^{-(w_{i+1}-w_i)} I(w_{i+1}) + int_0^{gap} h(w_i+u) e^{-u} du.
  std::vector<double> upper(n - k0);
  upper.back() = upper_integral(ws[n - 1]);
  for (std::size_t i = n - 1; i-- > k0;) {
    double gap = ws[i + 1] - ws[i];
    double inc =
        gap == 0.0
            ? 0.0
            : adaptive_simpson([&](double u) { return h_.eval(ws[i] + u) * std::exp(-u); }, 0.0,
                               gap, gap_tol);
    upper[i - k0] = std::exp(-gap) * upper[i - k0 + 1] + inc;
  }

  // Forward sweep for C(w) = int_0^w h e^{-x} dx.
  long double cum = adaptive_simpson(integrand, 0.0, ws[k0], gap_tol);
  for (std::size_t i = k0; i < n; ++i) {
    if (i > k0) {
      double gap = ws[i] - ws[i - 1];
      if (gap != 0.0) cum += adaptive_simpson(integrand, ws[i - 1], ws[i], gap_tol);
    }
    double w = ws[i];
    double f = -one_minus_exp_over(w) * upper[i - k0] + static_cast<double>(cum) / w;
    out.f[i] = f;
    out.f_prime[i] = (h_.eval(w) - exp_mean_ + (w - 1.0) * f) / w;
  }
  return out;
}

SteinSolution solve_stein(TestFunction h, double abs_tol) {
  return SteinSolution(std::move(h), abs_tol);
}

double smoothing_h(const SmoothingParams& p, double x) {
  if (!(p.delta > 0.0)) throw std::invalid_argument("smoothing: delta must be positive");
  if (p.t < 0.0) throw std::invalid_argument("smoothing: t must be nonnegative");
  double d = p.delta, t = p.t;
  if (x <= t - d) return 1.0;
  if (x > t) return 0.0;
  if (x <= t - d / 2) {
    double u = x - t + d;
    return 1.0 - 2.0 * u * u / (d * d);
  }
  double u = x - t;
  return 2.0 * u * u / (d * d);
}

double smoothing_h_prime(const SmoothingParams& p, double x) {
  if (!(p.delta > 0.0)) throw std::invalid_argument("smoothing: delta must be positive");
  if (p.t < 0.0) throw std::invalid_argument("smoothing: t must be nonnegative");
  double d = p.delta, t = p.t;
  if (x <= t - d || x > t) return 0.0;
  if (x <= t - d / 2) return -4.0 * (x - t + d) / (d * d);
  return 4.0 * (x - t) / (d * d);
}

TestFunction shifted_smoothing(const SmoothingParams& p) {
  double h0 = smoothing_h(p, 0.0);
  double hp0 = smoothing_h_prime(p, 0.0);
  TestFunction tf;
  tf.h = [p, h0, hp0](double x) { return smoothing_h(p, x) - h0 - x * hp0; };
  tf.h_prime = [p, hp0](double x) { return smoothing_h_prime(p, x) - hp0; };
  // h' ranges over [-2/delta, 0], so after recentering at h'(0) the sup is
  // max(|h'(0)|, 2/delta - |h'(0)|).
  tf.sup_norm_h_prime = std::max(std::abs(hp0), 2.0 / p.delta - std::abs(hp0));
  tf.sup_norm_h_double_prime = 4.0 / (p.delta * p.delta);
  return tf;
}

double smooth_bound(const PairStats& stats, double h_prime_norm, double h_double_prime_norm) {
  stats.validate();
  if (h_prime_norm < 0 || h_double_prime_norm < 0)
    throw std::invalid_argument("smooth_bound: norms must be nonnegative");
  return 4.0 * h_prime_norm * stats.t1 + h_prime_norm * stats.mean_gap +
         (2.0 * kSecondDerivCoeff * h_prime_norm + 3.0 * h_double_prime_norm) * stats.third_abs /
             (4.0 * stats.a) +
         4.0 * h_prime_norm * stats.remainder_abs / stats.a;
}

BoundReport kolmogorov_bound(const PairStats& stats, double delta) {
  stats.validate();
  if (!(delta > 0.0)) throw std::invalid_argument("kolmogorov_bound: delta must be positive");
  BoundReport r;
  r.delta = delta;
  r.t1_term = 8.0 / delta * stats.t1;
  r.mean_term = 2.0 / delta * stats.mean_gap;
  r.third_term = (kSecondDerivCoeff / delta + 3.0 / (delta * delta)) * stats.third_abs / stats.a;
  r.remainder_term = 8.0 / delta * stats.remainder_abs / stats.a;
  r.delta_half = delta / 2.0;
  r.bound = r.t1_term + r.mean_term + r.third_term + r.remainder_term + r.delta_half;
  return r;
}

std::pair<double, BoundReport> optimize_delta(const PairStats& stats) {
  stats.validate();
  double inv_a = 1.0 / stats.a;
  double A = 8.0 * stats.t1 + 2.0 * stats.mean_gap + kSecondDerivCoeff * stats.third_abs * inv_a +
             8.0 * stats.remainder_abs * inv_a;
  double B = 3.0 * stats.third_abs * inv_a;
  if (A == 0.0 && B == 0.0) return {0.0, BoundReport{}};  // bound -> 0 as delta -> 0
  double delta_star;
  if (B == 0.0) {
    delta_star = std::sqrt(2.0 * A);
  } else {
    // Stationarity: delta^3 / 2 = A delta + 2B, one positive root.
    auto g = [&](double d) { return d * d * d / 2.0 - A * d - 2.0 * B; };
    double lo = 1e-9, hi = 1e6;
    while (g(hi) < 0.0 && hi < 1e18) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    delta_star = 0.5 * (lo + hi);
  }
  return {delta_star, kolmogorov_bound(stats, delta_star)};
}

SolutionBoundReport verify_solution_bounds(const TestFunction& h, std::span<const double> grid,
                                           double abs_tol) {
  double scale = std::max(1.0, h.sup_norm_h_prime);
  if (std::abs(h.eval(0.0)) > 1e-9 * scale || std::abs(h.deriv(0.0)) > 1e-9 * scale)
    throw std::invalid_argument("verify_solution_bounds: requires h(0) = 0 and h'(0) = 0");
  if (!h.sup_norm_h_double_prime)
    throw std::invalid_argument("verify_solution_bounds: requires a second-derivative sup norm");
  for (double w : grid)
    if (w < 0.0) throw std::invalid_argument("verify_solution_bounds: grid must be nonnegative");

  SteinSolution sol(h, abs_tol);
  SolutionBoundReport r;
  for (double w : grid) {
    double step = 1e-4 * std::max(1.0, w);
    if (w - step < 0.0) step = w / 2;
    double f = sol.value(w);
    double fp = sol.derivative(w);
    double fpp = (sol.derivative(w + step) - sol.derivative(w - step)) / (2.0 * step);
    r.max_abs_f = std::max(r.max_abs_f, std::abs(f));
    r.max_abs_f_prime = std::max(r.max_abs_f_prime, std::abs(fp));
    r.max_abs_f_double_prime = std::max(r.max_abs_f_double_prime, std::abs(fpp));
  }
  auto ratio = [](double measured, double bound) {
    if (bound == 0.0) return measured == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return measured / bound;
  };
  double hp = h.sup_norm_h_prime, hpp = *h.sup_norm_h_double_prime;
  r.ratio_f = ratio(r.max_abs_f, (1.0 + 2.0 / std::exp(1.0)) * hp);
  r.ratio_f_prime = ratio(r.max_abs_f_prime, 2.0 * hp);
  r.ratio_f_double_prime = ratio(r.max_abs_f_double_prime, kSecondDerivCoeff * hp + 3.0 * hpp);
  return r;
}

std::vector<std::pair<SmoothingParams, TestFunction>> smoothing_test_family() {
  std::vector<std::pair<SmoothingParams, TestFunction>> fam;
  for (double t : {0.5, 1.0, 2.0, 4.0})
    for (double d : {0.1, 0.5, 1.0}) {
      SmoothingParams p{t, d};
      fam.emplace_back(p, shifted_smoothing(p));
    }
  return fam;
}

}  // namespace steinexp
