#include "steinexp/unitary.hpp"

#include <stdexcept>

namespace steinexp {

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw std::invalid_argument("unitary matrix must be square and nonempty");
  if (unitarity_defect() > kUnitarityTol)
    throw std::invalid_argument("matrix violates the unitarity invariant");
}

double UnitaryMatrix::unitarity_defect() const {
  Eigen::MatrixXcd d = m_ * m_.adjoint();
  d.diagonal().array() -= 1.0;
  return d.cwiseAbs().maxCoeff();
}

UnitaryMatrix haar_sample(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("haar_sample: dimension must be positive");
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    std::complex<double> r = qr.matrixQR()(j, j);
    q.col(j) *= r / std::abs(r);
  }
  return UnitaryMatrix(std::move(q));
}

Eigen::MatrixXcd sample_skew_gaussian(int n, RngStream& rng) {
  Eigen::MatrixXcd s(n, n);
  for (int j = 0; j < n; ++j) {
    s(j, j) = std::complex<double>(0.0, rng.gaussian());
    for (int k = j + 1; k < n; ++k) {
      std::complex<double> z = rng.complex_gaussian();
      s(j, k) = z;
      s(k, j) = -std::conj(z);
    }
  }
  return s;
}

UnitaryMatrix matrix_exp_skew(const Eigen::MatrixXcd& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("matrix_exp_skew: matrix must be square");
  double scale = g.cwiseAbs().maxCoeff();
  double defect = (g + g.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * std::max(scale, 1e-300))
    throw std::invalid_argument("matrix_exp_skew: input is not skew-Hermitian");
  // G = iH with H Hermitian; exp(G) = V diag(e^{i lambda}) V*.
  Eigen::MatrixXcd h = std::complex<double>(0.0, -1.0) * g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases = (std::complex<double>(0.0, 1.0) * es.eigenvalues().array())
                                .exp()
                                .matrix()
                                .cast<std::complex<double>>();
  return UnitaryMatrix(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

UnitaryMatrix heat_step(const UnitaryMatrix& u, const DiffusionStep& step, RngStream& rng) {
  if (!(step.t > 0.0)) throw std::invalid_argument("heat_step: t must be positive");
  if (step.substeps < 1) throw std::invalid_argument("heat_step: substeps must be >= 1");
  double scale = std::sqrt(2.0 * step.t / step.substeps);
  Eigen::MatrixXcd m = u.matrix();
  for (int s = 0; s < step.substeps; ++s) {
    Eigen::MatrixXcd g = scale * sample_skew_gaussian(u.dim(), rng);
    m = m * matrix_exp_skew(g).matrix();
  }
  return UnitaryMatrix(std::move(m));
}

std::pair<UnitaryMatrix, UnitaryMatrix> heat_step_pair(const UnitaryMatrix& u, double t,
                                                       RngStream& rng) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_step_pair: t must be positive");
  Eigen::MatrixXcd g = std::sqrt(2.0 * t) * sample_skew_gaussian(u.dim(), rng);
  Eigen::MatrixXcd e = matrix_exp_skew(g).matrix();
  return {UnitaryMatrix(u.matrix() * e), UnitaryMatrix(u.matrix() * e.adjoint())};
}

std::complex<double> trace_power(const UnitaryMatrix& u, int k) {
  if (k < 1) throw std::invalid_argument("trace_power: k must be positive");
  if (k == 1) return u.matrix().trace();
  Eigen::MatrixXcd m = u.matrix();
  for (int i = 1; i < k; ++i) m = m * u.matrix();
  return m.trace();
}

}  // namespace steinexp
