#include "steinexp/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "steinexp/parallel.hpp"

namespace steinexp {

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  long double sum = 0.0L;
  for (double x : xs) sum += x;
  out.mean = static_cast<double>(sum / n);
  if (n < 2) return out;
  long double ss = 0.0L;
  for (double x : xs) {
    long double d = x - out.mean;
    ss += d * d;
  }
  out.se = std::sqrt(static_cast<double>(ss) / (static_cast<double>(n) * (n - 1)));
  return out;
}

double w_statistic(const UnitaryMatrix& u) { return std::norm(u.matrix().trace()); }

}  // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STEIN_EXP_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double exp_quantile(double u) {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::invalid_argument("exp_quantile: argument must lie in (0,1)");
  return -std::log1p(-u);
}

SampleBatch sample_w(int n, std::size_t count, std::uint64_t seed, int workers) {
  return sample_w_power(n, 1, count, seed, workers);
}

SampleBatch sample_w_power(int n, int k, std::size_t count, std::uint64_t seed, int workers) {
  if (n < 1) throw std::invalid_argument("sample_w: dimension must be positive");
  if (k < 1) throw std::invalid_argument("sample_w: trace power must be positive");
  if (count < 1) throw std::invalid_argument("sample_w: count must be positive");
  SampleBatch batch;
  batch.n = n;
  batch.seed = seed;
  batch.values.resize(count);
  detail::parallel_for_items(count, resolve_workers(workers), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      RngStream rng = RngStream::for_item(seed, i);
      UnitaryMatrix u = haar_sample(n, rng);
      batch.values[i] = k == 1 ? w_statistic(u) : std::norm(trace_power(u, k)) / k;
    }
  });
  return batch;
}

double empirical_dk_exp(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("empirical_dk_exp: empty sample");
  std::vector<double> xs(values.begin(), values.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double cdf = -std::expm1(-xs[i]);
    double hi = (static_cast<double>(i) + 1.0) / n - cdf;
    double lo = cdf - static_cast<double>(i) / n;
    d = std::max({d, std::abs(hi), std::abs(lo)});
  }
  return d;
}

DkReport estimate_dk(const SampleBatch& batch, double alpha) {
  if (batch.values.empty()) throw std::invalid_argument("estimate_dk: empty batch");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::invalid_argument("estimate_dk: bad alpha");
  DkReport r;
  r.alpha = alpha;
  r.count = batch.count();
  r.dk = empirical_dk_exp(batch.values);
  r.dkw_radius = std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(r.count)));
  return r;
}

double two_sample_ks(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("two_sample_ks: empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

EmpiricalPairStats empirical_pair_stats(const PairStatsConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("pair stats: dimension must be positive");
  if (!(cfg.t > 0.0)) throw std::invalid_argument("pair stats: t must be positive");
  if (cfg.count < 1) throw std::invalid_argument("pair stats: count must be positive");
  if (cfg.inner_replicas < 2)
    throw std::invalid_argument("pair stats: conditional variance needs >= 2 inner replicas");

  const double a = 2.0 * cfg.n * cfg.t;
  const int m = cfg.inner_replicas;
  std::vector<double> w(cfg.count), dev(cfg.count), rem(cfg.count), third(cfg.count);

  detail::parallel_for_items(
      cfg.count, resolve_workers(cfg.workers), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          RngStream rng = RngStream::for_item(cfg.seed, i);
          UnitaryMatrix u = haar_sample(cfg.n, rng);
          const double wi = w_statistic(u);
          double c1 = 0.0, c2 = 0.0, c3 = 0.0;
          for (int r = 0; r < m; ++r) {
            auto [plus, minus] = heat_step_pair(u, cfg.t, rng);
            double dp = w_statistic(plus) - wi;
            double dm = w_statistic(minus) - wi;
            c1 += 0.5 * (dp + dm);
            c2 += 0.5 * (dp * dp + dm * dm);
            c3 += 0.5 * (std::abs(dp * dp * dp) + std::abs(dm * dm * dm));
          }
          c1 /= m;
          c2 /= m;
          c3 /= m;
          w[i] = wi;
          dev[i] = std::abs(wi - c2 / (2.0 * a));
          rem[i] = std::abs(c1 + a * (wi - 1.0));
          third[i] = c3;
        }
      });

  EmpiricalPairStats out;
  out.a = a;
  out.n = cfg.n;
  out.t = cfg.t;
  out.count = cfg.count;
  out.seed = cfg.seed;
  out.inner_replicas = m;
  auto mw = mean_se(w);
  auto md = mean_se(dev);
  auto mr = mean_se(rem);
  auto m3 = mean_se(third);
  out.t1 = md.mean;
  out.se_t1 = md.se;
  out.mean_gap = std::abs(mw.mean - 1.0);
  out.se_mean_gap = mw.se;
  out.third_abs = m3.mean;
  out.se_third = m3.se;
  out.remainder_abs = mr.mean;
  out.se_remainder = mr.se;
  return out;
}

PairStatsLimit pair_stats_limit(const PairStatsConfig& cfg) {
  PairStatsLimit out;
  out.at_t = empirical_pair_stats(cfg);
  PairStatsConfig quarter = cfg;
  quarter.t = cfg.t / 4.0;
  out.at_quarter_t = empirical_pair_stats(quarter);
  out.third_scaling_ratio = out.at_quarter_t.third_abs > 0.0
                                ? out.at_t.third_abs / out.at_quarter_t.third_abs
                                : 0.0;
  out.limit.a = out.at_quarter_t.a;
  out.limit.t1 = (4.0 * out.at_quarter_t.t1 - out.at_t.t1) / 3.0;
  out.limit.mean_gap = out.at_t.mean_gap;
  out.limit.third_abs = 0.0;  // O(t^{3/2}); scaling ratio above is the evidence
  out.limit.remainder_abs = out.at_quarter_t.remainder_abs;
  return out;
}

Main2Report verify_main2(int n, std::size_t count, std::uint64_t seed, int workers) {
  if (n < 8)
    throw std::invalid_argument(
        "verify_main2: the bound requires n >= 8 (got n = " + std::to_string(n) +
        ")");
  Main2Report r;
  r.n = n;
  r.count = count;
  r.seed = seed;
  DkReport dk = estimate_dk(sample_w(n, count, seed, workers));
  r.dk = dk.dk;
  r.dkw_radius = dk.dkw_radius;
  r.bound = std::pow(2.0, 2.25) / std::sqrt(static_cast<double>(n));
  r.pass = r.dk - r.dkw_radius <= r.bound;
  return r;
}

namespace {

int lis_length(const std::vector<int>& perm) {
  std::vector<int> best;
  for (int v : perm) {
    auto it = std::lower_bound(best.begin(), best.end(), v);
    if (it == best.end())
      best.push_back(v);
    else
      *it = v;
  }
  return static_cast<int>(best.size());
}

}  // namespace

double lis_exact(int n_perm, int l) {
  if (n_perm < 1 || n_perm > 8) throw std::invalid_argument("lis_exact: n_perm must be in [1,8]");
  if (l < 1) throw std::invalid_argument("lis_exact: l must be positive");
  std::vector<int> perm(n_perm);
  std::iota(perm.begin(), perm.end(), 1);
  std::int64_t total = 0, good = 0;
  do {
    ++total;
    if (lis_length(perm) <= l) ++good;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(good) / static_cast<double>(total);
}

LisReport lis_cross_check(int n_perm, int l, std::size_t count, std::uint64_t seed, int workers) {
  if (n_perm < 1 || n_perm > 4)
    throw std::invalid_argument("lis_cross_check: n_perm must be in [1,4] for brute force");
  if (l < 1) throw std::invalid_argument("lis_cross_check: l must be positive");
  if (count < 2) throw std::invalid_argument("lis_cross_check: count must be >= 2");

  LisReport r;
  r.n_perm = n_perm;
  r.l = l;
  r.count = count;
  r.seed = seed;
  r.exact = lis_exact(n_perm, l);

  std::vector<double> vals(count);
  detail::parallel_for_items(count, resolve_workers(workers), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      RngStream rng = RngStream::for_item(seed, i);
      double w = w_statistic(haar_sample(l, rng));
      double v = 1.0;
      for (int k = 0; k < n_perm; ++k) v *= w;
      vals[i] = v;
    }
  });
  double fact = 1.0;
  for (int k = 2; k <= n_perm; ++k) fact *= k;
  auto ms = mean_se(vals);
  r.mc = ms.mean / fact;
  r.mc_se = ms.se / fact;
  r.pass = std::abs(r.mc - r.exact) <= 4.0 * r.mc_se;
  return r;
}

HaarCheckReport haar_check(int n, std::size_t count, std::uint64_t seed, int workers) {
  HaarCheckReport r;
  r.n = n;
  r.count = count;
  r.seed = seed;

  SampleBatch batch = sample_w(n, count, seed, workers);
  auto mw = mean_se(batch.values);
  std::vector<double> sq(batch.values.size());
  std::transform(batch.values.begin(), batch.values.end(), sq.begin(),
                 [](double w) { return w * w; });
  auto m2 = mean_se(sq);
  r.mean_w = mw.mean;
  r.se_mean = mw.se;
  r.second_moment = m2.mean;
  r.se_second = m2.se;

  // Invariance: Re Tr(VU) must match Re Tr(U) in law for any fixed V.
  const std::size_t ks_count = 10000;
  RngStream vstream(0x5EEDF1DEDULL);
  UnitaryMatrix v = haar_sample(n, vstream);
  std::vector<double> side_a(ks_count), side_b(ks_count);
  const std::uint64_t off_a = 1ULL << 40, off_b = (1ULL << 40) + ks_count;
  detail::parallel_for_items(ks_count, resolve_workers(workers), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      RngStream ra = RngStream::for_item(seed, off_a + i);
      side_a[i] = haar_sample(n, ra).matrix().trace().real();
      RngStream rb = RngStream::for_item(seed, off_b + i);
      side_b[i] = (v.matrix() * haar_sample(n, rb).matrix()).trace().real();
    }
  });
  r.ks_invariance = two_sample_ks(side_a, side_b);
  // Two-sample critical value at the 1% level: c(alpha) sqrt((n1+n2)/(n1 n2)).
  r.ks_critical = std::sqrt(-std::log(0.005) / 2.0) *
                  std::sqrt(2.0 / static_cast<double>(ks_count));
  r.pass = std::abs(r.mean_w - 1.0) <= 4.0 * r.se_mean &&
           std::abs(r.second_moment - 2.0) <= 4.0 * r.se_second &&
           r.ks_invariance < r.ks_critical;
  return r;
}

CalibrationReport diffusion_calibration(const CalibrationConfig& cfg) {
  if (cfg.n < 1 || !(cfg.t > 0.0) || cfg.pairs < 2)
    throw std::invalid_argument("diffusion_calibration: bad configuration");
  CalibrationReport r;
  r.n = cfg.n;
  r.t = cfg.t;
  r.pairs = cfg.pairs;
  r.seed = cfg.seed;

  std::vector<double> num(cfg.pairs), den(cfg.pairs), qv(cfg.pairs), th(cfg.pairs),
      thq(cfg.pairs);
  detail::parallel_for_items(
      cfg.pairs, resolve_workers(cfg.workers), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          RngStream rng = RngStream::for_item(cfg.seed, i);
          UnitaryMatrix u = haar_sample(cfg.n, rng);
          double w = w_statistic(u);
          auto [plus, minus] = heat_step_pair(u, cfg.t, rng);
          double dp = w_statistic(plus) - w, dm = w_statistic(minus) - w;
          double davg = 0.5 * (dp + dm);
          num[i] = davg * (1.0 - w);
          den[i] = (1.0 - w) * (1.0 - w);
          qv[i] = 0.5 * (dp * dp + dm * dm);
          th[i] = 0.5 * (std::abs(dp * dp * dp) + std::abs(dm * dm * dm));
          auto [qplus, qminus] = heat_step_pair(u, cfg.t / 4.0, rng);
          double qp = w_statistic(qplus) - w, qm = w_statistic(qminus) - w;
          thq[i] = 0.5 * (std::abs(qp * qp * qp) + std::abs(qm * qm * qm));
        }
      });

  long double snum = 0.0L, sden = 0.0L;
  for (std::size_t i = 0; i < cfg.pairs; ++i) {
    snum += num[i];
    sden += den[i];
  }
  r.slope = static_cast<double>(snum / sden);
  r.slope_target = 2.0 * cfg.n * cfg.t;
  r.qv_over_t = mean_se(qv).mean / cfg.t;
  r.qv_target = 4.0 * cfg.n;
  r.third_t = mean_se(th).mean;
  r.third_quarter_t = mean_se(thq).mean;
  r.third_ratio = r.third_quarter_t > 0.0 ? r.third_t / r.third_quarter_t : 0.0;
  return r;
}

namespace {

// int_a^b (x - c)^2 e^{-x} dx via the antiderivative -e^{-x}((x-c)^2 + 2(x-c) + 2).
double quad_exp_integral(double a, double b, double c) {
  auto anti = [c](double x) {
    double u = x - c;
    return -std::exp(-x) * (u * u + 2.0 * u + 2.0);
  };
  return anti(b) - anti(a);
}

}  // namespace

double smoothing_exp_mean(double t, double delta) {
  if (!(delta > 0.0) || t < 0.0)
    throw std::invalid_argument("smoothing_exp_mean: need delta > 0, t >= 0");
  double a1 = 0.0, b1 = std::max(0.0, t - delta);
  double b2 = std::max(0.0, t - delta / 2.0), b3 = std::max(0.0, t);
  double inv = 2.0 / (delta * delta);
  double acc = 0.0;
  if (b1 > a1) acc += std::exp(-a1) - std::exp(-b1);
  if (b2 > b1) {
    acc += std::exp(-b1) - std::exp(-b2);
    acc -= inv * quad_exp_integral(b1, b2, t - delta);
  }
  if (b3 > b2) acc += inv * quad_exp_integral(b2, b3, t);
  return acc;
}

double smoothed_discrepancy_sup(std::span<const double> sorted_values, double delta,
                                double spacing) {
  if (sorted_values.empty()) throw std::invalid_argument("smoothed sup: empty sample");
  if (!(delta > 0.0) || !(spacing > 0.0))
    throw std::invalid_argument("smoothed sup: delta and spacing must be positive");
  const std::size_t n = sorted_values.size();
  std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s1[i + 1] = s1[i] + sorted_values[i];
    s2[i + 1] = s2[i] + sorted_values[i] * sorted_values[i];
  }
  auto idx = [&](double x) {
    return static_cast<std::size_t>(
        std::upper_bound(sorted_values.begin(), sorted_values.end(), x) - sorted_values.begin());
  };
  // Sum of (x - c)^2 over sorted values with index in [i, j).
  auto quad_sum = [&](std::size_t i, std::size_t j, double c) {
    double cnt = static_cast<double>(j - i);
    return (s2[j] - s2[i]) - 2.0 * c * (s1[j] - s1[i]) + c * c * cnt;
  };

  double tmax = sorted_values.back() + delta + spacing;
  double inv = 2.0 / (delta * delta);
  double sup = 0.0;
  for (double t = 0.0; t <= tmax; t += spacing) {
    std::size_t i1 = idx(t - delta), i2 = idx(t - delta / 2.0), i3 = idx(t);
    double sum = static_cast<double>(i1);
    sum += static_cast<double>(i2 - i1) - inv * quad_sum(i1, i2, t - delta);
    sum += inv * quad_sum(i2, i3, t);
    double mean_s = sum / static_cast<double>(n);
    sup = std::max(sup, std::abs(mean_s - smoothing_exp_mean(t, delta)));
  }
  return sup;
}

}  // namespace steinexp
