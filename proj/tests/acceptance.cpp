// Acceptance suite: one criterion per check, one PASS/FAIL line each, exit
// status = number of failed criteria. Heavier statistical checks run at
// fixed seeds; tolerances are hard-coded to the contract values.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "steinexp/mc_engine.hpp"
#include "steinexp/parallel.hpp"
#include "steinexp/verification.hpp"

using namespace steinexp;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void begin() { g_t0 = std::chrono::steady_clock::now(); }

void report(int idx, bool ok, const std::string& what) {
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - g_t0).count();
  std::printf("[%2d] %s  %s  (%.1fs)\n", idx, ok ? "PASS" : "FAIL", what.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

}  // namespace

// 1. exact Laplacian identities and the vanishing fourth-moment coefficient
static void criterion_1(const SymbolicVerifyReport& sym) {
  begin();
  bool ok = sym.identity_w && sym.identity_w_sq && sym.fourth_zero;
  report(1, ok,
         "symbolic identities: Delta(p1 pbar1) = " + sym.laplacian_w +
             "; Delta(p11 pbar11) = " + sym.laplacian_w_sq +
             "; fourth-moment t-coefficient = " + sym.fourth_moment);
}

// 2. moment oracle: E W^m = m! for m = 1..4 and zero on mismatched words
static void criterion_2(const SymbolicVerifyReport& sym) {
  begin();
  report(2, sym.moments,
         fmt("moment oracle: E W^m = 1, 2, 6, 24 and %d mismatched words of degree <= 6 vanish",
             sym.mismatched_words_checked));
}

// 3. Stein solution suite: residuals, closed forms, solution-norm ratios
static void criterion_3() {
  begin();
  auto r = stein_verify();
  report(3, r.pass,
         fmt("stein solutions: max residual %.2e (<= 1e-6), closed-form error %.2e (<= 1e-8), "
             "norm ratios %.3f/%.3f/%.3f (<= 1+1e-6)",
             r.max_residual, r.max_closed_form_error, r.max_ratio_f, r.max_ratio_f_prime,
             r.max_ratio_f_double));
}

// 4. characterization: |E[Z f'(Z) - (Z-1) f(Z)]| <= 3 SE + 1e-6 over 1e6 draws
static void criterion_4() {
  begin();
  const std::size_t n = 1000000;
  std::vector<double> zs(n);
  RngStream rng(991);
  for (double& z : zs) z = exp_quantile(rng.uniform());
  std::sort(zs.begin(), zs.end());

  auto family = smoothing_test_family();
  std::vector<double> worst_sigma(family.size(), 0.0);
  std::vector<bool> ok(family.size(), false);
  detail::parallel_for_items(family.size(), resolve_workers(0), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      SteinSolution sol(family[k].second, 1e-9);
      auto batch = sol.evaluate_sorted(zs);
      long double sum = 0.0L, sumsq = 0.0L;
      for (std::size_t i = 0; i < n; ++i) {
        double v = zs[i] * batch.f_prime[i] - (zs[i] - 1.0) * batch.f[i];
        sum += v;
        sumsq += static_cast<long double>(v) * v;
      }
      double mean = static_cast<double>(sum / n);
      double var = std::max(0.0, static_cast<double>(sumsq / n) - mean * mean);
      double se = std::sqrt(var / n);
      ok[k] = std::abs(mean) <= 3.0 * se + 1e-6;
      worst_sigma[k] = std::abs(mean) / (se + 1e-300);
    }
  });
  bool all = std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
  double worst = *std::max_element(worst_sigma.begin(), worst_sigma.end());
  report(4, all,
         fmt("characterization: 12 test functions x 1e6 Exp(1) draws, worst |mean|/SE = %.2f "
             "(<= 3)",
             worst));
}

// 5. Haar moments at n = 8 with 1e5 samples plus the invariance KS test
static void criterion_5() {
  begin();
  auto r = haar_check(8, 100000, 42);
  report(5, r.pass,
         fmt("haar sampler: mean W = %.4f (+-4SE %.4f), E W^2 = %.4f (+-4SE %.4f), "
             "invariance KS %.4f < %.4f",
             r.mean_w, 4.0 * r.se_mean, r.second_moment, 4.0 * r.se_second, r.ks_invariance,
             r.ks_critical));
}

// 6. diffusion calibration at n = 8, t = 1e-3, 2e4 pairs
static void criterion_6() {
  begin();
  CalibrationConfig cfg;
  cfg.n = 8;
  cfg.t = 1e-3;
  cfg.pairs = 20000;
  cfg.seed = 42;
  auto r = diffusion_calibration(cfg);
  bool slope_ok = std::abs(r.slope - r.slope_target) <= 0.10 * r.slope_target;
  bool qv_ok = std::abs(r.qv_over_t - r.qv_target) <= 0.05 * r.qv_target;
  bool third_ok = std::abs(r.third_ratio - 8.0) <= 0.30 * 8.0;
  report(6, slope_ok && qv_ok && third_ok,
         fmt("diffusion calibration: drift slope %.5f vs 2nt = %.5f (10%%), E(W'-W)^2/t = %.2f "
             "vs %g (5%%), |W'-W|^3 ratio %.2f vs 8 (30%%)",
             r.slope, r.slope_target, r.qv_over_t, r.qv_target, r.third_ratio));
}

// 7. headline bound at n = 8 and n = 64 with 1e5 samples
static void criterion_7() {
  begin();
  auto r8 = verify_main2(8, 100000, 42);
  auto r64 = verify_main2(64, 100000, 42);
  // the formula bound is the contract; the smaller literal values are also
  // cleared comfortably by the noise-floor-level empirical distances
  bool ok = r8.pass && r64.pass && (r8.dk - r8.dkw_radius <= 0.7937) &&
            (r64.dk - r64.dkw_radius <= 0.2973);
  // both empirical distances sit at the sampling noise floor: convergence is
  // already complete at these n within the resolution of 1e5 samples
  ok = ok && r8.dk <= 2.0 * r8.dkw_radius && r64.dk <= 2.0 * r64.dkw_radius;
  report(7, ok,
         fmt("headline: n=8 d_K %.4f - DKW %.4f <= %.4f; n=64 d_K %.4f - DKW %.4f <= %.4f",
             r8.dk, r8.dkw_radius, r8.bound, r64.dk, r64.dkw_radius, r64.bound));
}

// 8. bound pipeline: empirical pair statistics -> optimized Kolmogorov bound
static void criterion_8() {
  begin();
  PairStatsConfig cfg;
  cfg.n = 8;
  cfg.t = 1e-3;
  cfg.count = 4000;
  cfg.seed = 42;
  cfg.inner_replicas = 1000;
  auto lim = pair_stats_limit(cfg);
  auto [delta_star, bound] = optimize_delta(lim.limit);
  double target = std::pow(2.0, 2.25) / std::sqrt(8.0);
  bool bound_ok = std::abs(bound.bound - target) <= 0.25 * target;
  // one-sided: the estimate is consistent with the sqrt(2)/n majorant
  double t1_gap = lim.at_t.t1 - std::sqrt(2.0) / 8.0;
  bool t1_ok = t1_gap <= 4.0 * lim.at_t.se_t1;
  report(8, bound_ok && t1_ok,
         fmt("bound pipeline: optimized bound %.4f within 25%% of %.4f (delta* %.3f); "
             "t1 %.4f <= sqrt(2)/8 = %.4f + 4SE (%.4f)",
             bound.bound, target, delta_star, lim.at_t.t1, std::sqrt(2.0) / 8.0,
             4.0 * lim.at_t.se_t1));
}

// 9. subsequence identity: P(L_3 <= 2) = 5/6 against the U(2) integral
static void criterion_9() {
  begin();
  auto r = lis_cross_check(3, 2, 200000, 42);
  report(9, r.pass,
         fmt("lis identity: MC %.5f vs brute force %.5f (|diff| %.5f <= 4SE %.5f)", r.mc, r.exact,
             std::abs(r.mc - r.exact), 4.0 * r.mc_se));
}

// 10. smoothing sandwich: d_K <= sup_t |E_S h - E_Z h| + delta/2 + grid slack
static void criterion_10() {
  begin();
  RngStream rng(2718);
  std::vector<double> expo(20000), unif(20000), point(500, 1.0);
  for (double& x : expo) x = exp_quantile(rng.uniform());
  for (double& x : unif) x = 2.0 * rng.uniform();
  std::sort(expo.begin(), expo.end());
  std::sort(unif.begin(), unif.end());

  bool all = true;
  double worst_margin = 1e9;
  const char* names[3] = {"Exp(1)", "Uniform[0,2]", "point mass"};
  const std::vector<double>* sets[3] = {&expo, &unif, &point};
  for (int s = 0; s < 3; ++s) {
    for (double delta : {0.1, 0.5}) {
      double spacing = delta / 200.0;
      double dk = empirical_dk_exp(*sets[s]);
      double rhs =
          smoothed_discrepancy_sup(*sets[s], delta, spacing) + delta / 2.0 + 2.0 / delta * spacing;
      all = all && dk <= rhs;
      worst_margin = std::min(worst_margin, rhs - dk);
      (void)names;
    }
  }
  report(10, all, fmt("smoothing sandwich on 3 laws x delta {0.1, 0.5}: min slack %.4f >= 0",
                      worst_margin));
}

int main() {
  std::printf("acceptance suite (workers: %d)\n", resolve_workers(0));
  auto sym = symbolic_verify();
  criterion_1(sym);
  criterion_2(sym);
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%s: %d/10 criteria passed\n", g_failures == 0 ? "SUCCESS" : "FAILURE",
              10 - g_failures);
  return g_failures;
}
