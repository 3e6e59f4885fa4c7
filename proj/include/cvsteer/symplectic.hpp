#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "cvsteer/types.hpp"

namespace cvsteer {

/// Symplectic form for n modes: block-diagonal copies of [[0, 1], [-1, 0]]
/// in (x_1, p_1, ..., x_n, p_n) ordering.
template <typename Scalar = double>
DenseMatrix<Scalar> symplectic_form(Index n_modes) {
  if (n_modes < 1) {
    throw ContractViolation("symplectic_form: n_modes must be >= 1");
  }
  DenseMatrix<Scalar> omega = DenseMatrix<Scalar>::Zero(2 * n_modes, 2 * n_modes);
  for (Index k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = Scalar(1);
    omega(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return omega;
}

/// Linear phase-space map S with S Omega S^T = Omega.
///
/// The defect tolerance widens with the squared entry scale: beyond
/// squeezings around 7 the rounding of the S Omega S^T product alone can
/// cross the fixed tolerance.
template <typename Scalar>
class SymplecticMatrix {
 public:
  using Matrix = DenseMatrix<Scalar>;

  explicit SymplecticMatrix(Matrix entries) : mat_(std::move(entries)) {
    if (mat_.rows() == 0 || mat_.rows() != mat_.cols() || mat_.rows() % 2 != 0) {
      throw ContractViolation("symplectic matrix must be square with even dimension, got " +
                              std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
    }
    const Matrix omega = symplectic_form<Scalar>(n_modes());
    const Scalar defect = (mat_ * omega * mat_.transpose() - omega).cwiseAbs().maxCoeff();
    const Scalar scale = std::max(Scalar(1), mat_.cwiseAbs().maxCoeff());
    const Scalar allowed = std::max(Scalar(tol::physicality),
                                    Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale * scale);
    if (defect > allowed) {
      throw ContractViolation("matrix is not symplectic: max |S Omega S^T - Omega| = " +
                              std::to_string(static_cast<double>(defect)));
    }
  }

  static SymplecticMatrix identity(Index n_modes) {
    if (n_modes < 1) {
      throw ContractViolation("SymplecticMatrix::identity: n_modes must be >= 1");
    }
    return SymplecticMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
  }

  Index n_modes() const noexcept { return mat_.rows() / 2; }
  Index dim() const noexcept { return mat_.rows(); }
  const Matrix& mat() const noexcept { return mat_; }

 private:
  Matrix mat_;
};

template <typename Scalar>
struct BonaFideReport {
  bool physical;
  Scalar min_eigenvalue;  // smallest eigenvalue of sigma + i Omega
};

/// Uncertainty-principle test: sigma describes a physical state iff
/// sigma + i Omega >= 0. The report carries the smallest eigenvalue of that
/// Hermitian matrix; "physical" allows it to dip to -tol::physicality.
template <typename Scalar>
BonaFideReport<Scalar> check_bona_fide(const CovarianceMatrix<Scalar>& sigma) {
  using Complex = std::complex<Scalar>;
  using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  ComplexMatrix h = sigma.mat().template cast<Complex>();
  h += Complex(0, 1) * symplectic_form<Scalar>(sigma.n_modes()).template cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const Scalar lo = es.eigenvalues().minCoeff();
  return BonaFideReport<Scalar>{lo >= Scalar(-tol::physicality), lo};
}

/// Symplectic eigenvalues of a symmetric positive definite matrix: the n
/// magnitudes of the (purely imaginary) eigenvalues of Omega sigma, each
/// +-pair returned once, sorted ascending.
template <typename Scalar>
DenseVector<Scalar> symplectic_eigenvalues(const CovarianceMatrix<Scalar>& sigma) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> spd(sigma.mat(), Eigen::EigenvaluesOnly);
  const Scalar lambda_min = spd.eigenvalues().minCoeff();
  if (!(lambda_min > Scalar(0))) {
    throw NumericDomainError("symplectic_eigenvalues: matrix is not positive definite, eigenvalue " +
                             std::to_string(static_cast<double>(lambda_min)));
  }

  const DenseMatrix<Scalar> k = symplectic_form<Scalar>(sigma.n_modes()) * sigma.mat();
  Eigen::EigenSolver<DenseMatrix<Scalar>> es(k, /*computeEigenvectors=*/false);
  std::vector<Scalar> mags;
  mags.reserve(sigma.dim());
  for (Index i = 0; i < sigma.dim(); ++i) {
    mags.push_back(std::abs(es.eigenvalues()[i]));
  }
  std::sort(mags.begin(), mags.end());

  const Index n = sigma.n_modes();
  DenseVector<Scalar> nu(n);
  for (Index j = 0; j < n; ++j) {
    const Scalar lo = mags[2 * j];
    const Scalar hi = mags[2 * j + 1];
    if (hi - lo > Scalar(tol::pairing) * std::max(Scalar(1), hi)) {
      throw NumericDomainError("symplectic_eigenvalues: +- pairing failed, gap " +
                               std::to_string(static_cast<double>(hi - lo)));
    }
    nu[j] = (lo + hi) / Scalar(2);
  }
  return nu;
}

/// Principal submatrix on the kept modes (strictly increasing list); the
/// discarded modes are traced out.
template <typename Scalar>
CovarianceMatrix<Scalar> partial_trace(const CovarianceMatrix<Scalar>& sigma,
                                       const std::vector<Index>& keep) {
  if (keep.empty()) {
    throw ContractViolation("partial_trace: keep list is empty");
  }
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= sigma.n_modes()) {
      throw ContractViolation("partial_trace: mode " + std::to_string(keep[i]) + " out of range");
    }
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw ContractViolation("partial_trace: keep list must be strictly increasing");
    }
  }
  const auto idx = phase_space_indices(keep);
  DenseMatrix<Scalar> sub = sigma.mat()(idx, idx);
  return CovarianceMatrix<Scalar>(std::move(sub));
}

/// Schur complement of the steering party: M = B - C^T A^{-1} C in the block
/// layout [[A, C], [C^T, B]] with A on the steering modes and B on the
/// steered modes. Modes outside the partition are traced out.
template <typename Scalar>
CovarianceMatrix<Scalar> schur_complement(const CovarianceMatrix<Scalar>& sigma,
                                          const ModePartition& partition) {
  partition.require_within(sigma.n_modes());
  const auto a_idx = phase_space_indices(partition.steering_modes());
  const auto b_idx = phase_space_indices(partition.steered_modes());
  const DenseMatrix<Scalar> a = sigma.mat()(a_idx, a_idx);
  const DenseMatrix<Scalar> b = sigma.mat()(b_idx, b_idx);
  const DenseMatrix<Scalar> c = sigma.mat()(a_idx, b_idx);

  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(a, Eigen::EigenvaluesOnly);
  const Scalar abs_max = es.eigenvalues().cwiseAbs().maxCoeff();
  const Scalar abs_min = es.eigenvalues().cwiseAbs().minCoeff();
  const Scalar floor = abs_max * Scalar(a.rows()) * Scalar(64) * std::numeric_limits<Scalar>::epsilon();
  if (!(abs_min > floor)) {
    const double cond = abs_min > Scalar(0)
                            ? static_cast<double>(abs_max / abs_min)
                            : std::numeric_limits<double>::infinity();
    throw SingularBlockError("schur_complement: steering block is numerically singular, condition ~ " +
                                 std::to_string(cond),
                             cond);
  }

  DenseMatrix<Scalar> m;
  if (a.rows() == 2) {
    // one steering mode: explicit 2x2 inverse
    const Scalar det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    DenseMatrix<Scalar> ainv(2, 2);
    ainv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
    ainv /= det;
    m = b - c.transpose() * ainv * c;
  } else {
    m = b - c.transpose() * Eigen::PartialPivLU<DenseMatrix<Scalar>>(a).solve(c);
  }
  m = DenseMatrix<Scalar>(Scalar(0.5) * (m + m.transpose()));
  return CovarianceMatrix<Scalar>(std::move(m));
}

/// Renyi-2 entropy (1/2) ln det sigma; zero for pure states.
template <typename Scalar>
Scalar renyi2_entropy(const CovarianceMatrix<Scalar>& sigma) {
  const Scalar det = sigma.mat().determinant();
  if (!(det >= Scalar(1) - Scalar(tol::physicality))) {
    throw NumericDomainError("renyi2_entropy: det sigma = " +
                             std::to_string(static_cast<double>(det)) +
                             " < 1, not a physical covariance matrix");
  }
  return Scalar(0.5) * std::log(det);
}

/// Congruence S sigma S^T. Symplectic eigenvalues are invariant under this
/// map.
template <typename Scalar>
CovarianceMatrix<Scalar> apply_symplectic(const CovarianceMatrix<Scalar>& sigma,
                                          const SymplecticMatrix<Scalar>& s) {
  if (sigma.dim() != s.dim()) {
    throw ContractViolation("apply_symplectic: dimension mismatch, sigma is " +
                            std::to_string(sigma.dim()) + ", S is " + std::to_string(s.dim()));
  }
  DenseMatrix<Scalar> out = s.mat() * sigma.mat() * s.mat().transpose();
  out = DenseMatrix<Scalar>(Scalar(0.5) * (out + out.transpose()));
  return CovarianceMatrix<Scalar>(std::move(out));
}

template <typename Scalar>
CovarianceMatrix<Scalar> direct_sum(const CovarianceMatrix<Scalar>& first,
                                    const CovarianceMatrix<Scalar>& second) {
  const Index d1 = first.dim();
  const Index d2 = second.dim();
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(d1 + d2, d1 + d2);
  out.topLeftCorner(d1, d1) = first.mat();
  out.bottomRightCorner(d2, d2) = second.mat();
  return CovarianceMatrix<Scalar>(std::move(out));
}

template <typename Scalar>
SymplecticMatrix<Scalar> direct_sum(const SymplecticMatrix<Scalar>& first,
                                    const SymplecticMatrix<Scalar>& second) {
  const Index d1 = first.dim();
  const Index d2 = second.dim();
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(d1 + d2, d1 + d2);
  out.topLeftCorner(d1, d1) = first.mat();
  out.bottomRightCorner(d2, d2) = second.mat();
  return SymplecticMatrix<Scalar>(std::move(out));
}

}  // namespace cvsteer
