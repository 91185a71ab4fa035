#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "steinexp/rng.hpp"

namespace steinexp {

/// n x n complex matrix carrying the unitarity invariant
/// ||U U* - I||_max <= 1e-10, checked at construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Eigen::MatrixXcd m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  /// Max-norm unitarity defect ||U U* - I||_max.
  double unitarity_defect() const;

  static constexpr double kUnitarityTol = 1e-10;

 private:
  Eigen::MatrixXcd m_;
};

/// One heat-kernel move of duration t, optionally split into substeps for
/// higher kernel fidelity.
struct DiffusionStep {
  double t = 1e-3;
  int substeps = 1;
};

/// Haar-distributed unitary: complex Ginibre matrix, Householder QR, then the
/// column phases fixed so the triangular factor has positive real diagonal.
/// Deterministic given the stream state.
UnitaryMatrix haar_sample(int n, RngStream& rng);

/// A standard skew-Hermitian Gaussian: diagonal entries i N(0,1), entry (j,k)
/// for j < k equal to (xi + i eta)/sqrt(2), entry (k,j) its negated conjugate.
/// Normalized so that sum over the induced orthonormal basis gives
/// sum_a X_a^2 = -n I, matching the Laplacian with Delta Tr(U) = -n Tr(U).
Eigen::MatrixXcd sample_skew_gaussian(int n, RngStream& rng);

/// exp(G) for skew-Hermitian G via the Hermitian eigendecomposition of -iG;
/// the result is unitary up to floating point. Rejects inputs with
/// ||G + G*||_max > 1e-12 ||G||_max.
UnitaryMatrix matrix_exp_skew(const Eigen::MatrixXcd& g);

/// Geodesic diffusion step U' = U exp(sqrt(2 t / substeps) S) per substep.
/// The sqrt(2) makes the generator the group Laplacian (a standard Brownian
/// motion has generator Delta/2), so E[phi(U')|U] = phi(U) + t Delta phi(U)
/// + O(t^2) for smooth phi.
UnitaryMatrix heat_step(const UnitaryMatrix& u, const DiffusionStep& step, RngStream& rng);

/// The antithetic pair (U e^G, U e^{-G}) from a single generator draw; both
/// legs have the heat-kernel law and share one eigendecomposition. Only
/// meaningful for substeps = 1.
std::pair<UnitaryMatrix, UnitaryMatrix> heat_step_pair(const UnitaryMatrix& u, double t,
                                                       RngStream& rng);

/// Tr(U^k) by repeated multiplication, k >= 1.
std::complex<double> trace_power(const UnitaryMatrix& u, int k);

}  // namespace steinexp
