#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "steinexp/unitary.hpp"

using namespace steinexp;
using cd = std::complex<double>;

TEST_CASE("unitarity invariant is enforced") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3) * 1.5;
  CHECK_THROWS_AS([&] { return UnitaryMatrix(bad); }(), std::invalid_argument);
  UnitaryMatrix id(Eigen::MatrixXcd::Identity(4, 4));
  CHECK(id.unitarity_defect() <= 1e-15);
}

TEST_CASE("haar sampling") {
  CHECK_THROWS_AS([] { RngStream r(1); return haar_sample(0, r); }(), std::invalid_argument);

  // U(1) is the circle: |U_11| = 1, argument uniform-ish across draws
  RngStream rng(17);
  double mean_re = 0.0;
  for (int k = 0; k < 2000; ++k) {
    UnitaryMatrix u = haar_sample(1, rng);
    CHECK(std::abs(std::abs(u.matrix()(0, 0)) - 1.0) <= 1e-12);
    mean_re += u.matrix()(0, 0).real();
  }
  CHECK(std::abs(mean_re / 2000.0) <= 0.05);

  for (int n : {2, 5, 8, 16}) {
    RngStream r2(n);
    CHECK(haar_sample(n, r2).unitarity_defect() <= UnitaryMatrix::kUnitarityTol);
  }

  // identical seeds produce identical matrices bit for bit
  RngStream a(123), b(123);
  Eigen::MatrixXcd ua = haar_sample(6, a).matrix(), ub = haar_sample(6, b).matrix();
  CHECK((ua - ub).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("trace powers") {
  UnitaryMatrix id(Eigen::MatrixXcd::Identity(3, 3));
  CHECK(trace_power(id, 2) == cd(3.0, 0.0));

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = cd(0.0, 1.0);
  d(1, 1) = cd(0.0, -1.0);
  UnitaryMatrix u(d);
  CHECK(trace_power(u, 2).real() == doctest::Approx(-2.0));
  CHECK(std::abs(trace_power(u, 2).imag()) <= 1e-15);
  CHECK_THROWS_AS(trace_power(u, 0), std::invalid_argument);

  RngStream rng(4);
  UnitaryMatrix h = haar_sample(5, rng);
  CHECK(std::norm(trace_power(h, 1)) >= 0.0);
}

TEST_CASE("matrix exponential of skew-Hermitian generators") {
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(3, 3);
  CHECK((matrix_exp_skew(zero).matrix() - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <=
        1e-14);

  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(1, 1);
  g(0, 0) = cd(0.0, M_PI);
  CHECK(matrix_exp_skew(g).matrix()(0, 0).real() == doctest::Approx(-1.0).epsilon(1e-14));

  RngStream rng(8);
  Eigen::MatrixXcd s = sample_skew_gaussian(6, rng);
  CHECK((s + s.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
  Eigen::MatrixXcd e = matrix_exp_skew(s).matrix();
  Eigen::MatrixXcd em = matrix_exp_skew((-s).eval()).matrix();
  CHECK((e * em - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-10);

  Eigen::MatrixXcd herm = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(matrix_exp_skew(herm), std::invalid_argument);
}

TEST_CASE("heat step") {
  RngStream rng(21);
  UnitaryMatrix u = haar_sample(8, rng);
  CHECK_THROWS_AS(heat_step(u, {0.0, 1}, rng), std::invalid_argument);
  CHECK_THROWS_AS(heat_step(u, {1e-3, 0}, rng), std::invalid_argument);

  UnitaryMatrix v = heat_step(u, {1e-3, 1}, rng);
  CHECK(v.unitarity_defect() <= UnitaryMatrix::kUnitarityTol);
  UnitaryMatrix v4 = heat_step(u, {1e-3, 4}, rng);
  CHECK(v4.unitarity_defect() <= UnitaryMatrix::kUnitarityTol);

  // t -> 0: U' -> U
  UnitaryMatrix tiny = heat_step(u, {1e-20, 1}, rng);
  CHECK((tiny.matrix() - u.matrix()).cwiseAbs().maxCoeff() <= 1e-9);

  // antithetic legs share the generator: e^G e^{-G} = I exactly up to fp
  auto [plus, minus] = heat_step_pair(u, 1e-3, rng);
  Eigen::MatrixXcd prod = u.matrix().adjoint() * plus.matrix() *
                          (u.matrix().adjoint() * minus.matrix());
  CHECK((prod - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("generator calibration: drift of W at three step sizes") {
  // slope of antithetic-averaged (W'-W)/t regressed on (1-W) approaches 2n,
  // with residual shrinking roughly linearly in t
  const int n = 8;
  const std::size_t outer = 1500;
  const int inner = 60;
  double residual[3];
  double ts[3] = {1e-2, 1e-3, 1e-4};
  for (int k = 0; k < 3; ++k) {
    double t = ts[k];
    long double num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < outer; ++i) {
      RngStream rng = RngStream::for_item(314, i);
      UnitaryMatrix u = haar_sample(n, rng);
      double w = std::norm(u.matrix().trace());
      double davg = 0.0;
      for (int r = 0; r < inner; ++r) {
        auto [up, um] = heat_step_pair(u, t, rng);
        davg += 0.5 * (std::norm(up.matrix().trace()) + std::norm(um.matrix().trace())) - w;
      }
      davg /= inner;
      num += (davg / t) * (1.0 - w);
      den += (1.0 - w) * (1.0 - w);
    }
    double slope = static_cast<double>(num / den);
    residual[k] = std::abs(slope - 2.0 * n);
  }
  // 2 n^2 t model: ~1.28, ~0.128, ~0.013 before noise (noise floor ~0.05)
  CHECK(residual[0] > 4.0 * residual[1]);
  CHECK(residual[0] < 25.0 * residual[1]);
  CHECK(residual[2] < residual[1]);
  CHECK(residual[0] == doctest::Approx(2.0 * n * n * ts[0]).epsilon(0.35));
}
