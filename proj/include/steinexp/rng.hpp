#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace steinexp {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream: mt19937_64 with explicit Box-Muller so that
/// identical seeds produce identical draws bit-for-bit on every platform.
/// Parallel work uses one stream per logical item with the documented
/// derivation seed_k = splitmix64(base_seed) + k; results are therefore
/// independent of how items are assigned to worker threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  static RngStream for_item(std::uint64_t base_seed, std::uint64_t item) {
    return RngStream(splitmix64(base_seed) + item);
  }

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one cached partner draw).
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Standard complex normal with E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    double re = gaussian(), im = gaussian();
    return {re * 0.7071067811865475244, im * 0.7071067811865475244};
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace steinexp
