#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cvsteer {

using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Absolute tolerances shared across the library. Construction checks are
// relative to the largest entry of the matrix at hand.
namespace tol {
inline constexpr double construction = 1e-12;
inline constexpr double physicality = 1e-10;
inline constexpr double spectral = 1e-9;
inline constexpr double pairing = 1e-8;
inline constexpr double steerable = 1e-12;
}  // namespace tol

struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct RangeLimitError : std::range_error {
  using std::range_error::range_error;
};

class SingularBlockError : public NumericDomainError {
 public:
  SingularBlockError(const std::string& what, double condition_estimate)
      : NumericDomainError(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Symmetric 2n x 2n matrix of second moments of an n-mode Gaussian state,
/// in the hbar = 1 convention where the vacuum covariance is the identity.
///
/// Construction symmetrizes inputs whose asymmetry is below
/// tol::construction relative to the largest absolute entry and rejects
/// anything worse.
template <typename Scalar>
class CovarianceMatrix {
 public:
  using Matrix = DenseMatrix<Scalar>;

  explicit CovarianceMatrix(Matrix entries) : mat_(std::move(entries)) {
    if (mat_.rows() == 0 || mat_.rows() != mat_.cols() || mat_.rows() % 2 != 0) {
      throw ContractViolation("covariance matrix must be square with even dimension, got " +
                              std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
    }
    const Scalar scale = mat_.cwiseAbs().maxCoeff();
    const Scalar asym = (mat_ - mat_.transpose()).cwiseAbs().maxCoeff();
    if (asym > Scalar(tol::construction) * scale) {
      throw ContractViolation("covariance matrix is not symmetric: max |m - m^T| = " +
                              std::to_string(static_cast<double>(asym)));
    }
    mat_ = Matrix(Scalar(0.5) * (mat_ + mat_.transpose()));
  }

  Index n_modes() const noexcept { return mat_.rows() / 2; }
  Index dim() const noexcept { return mat_.rows(); }
  const Matrix& mat() const noexcept { return mat_; }

 private:
  Matrix mat_;
};

/// Ordered split of mode indices into a steering party and a steered party.
/// Both lists are non-empty, strictly increasing and disjoint; together they
/// may cover a subset of the state's modes (uncovered modes are traced out
/// by the operations that take a partition).
class ModePartition {
 public:
  ModePartition(std::vector<Index> steering_modes, std::vector<Index> steered_modes)
      : steering_(std::move(steering_modes)), steered_(std::move(steered_modes)) {
    require_list_valid(steering_, "steering");
    require_list_valid(steered_, "steered");
    for (Index m : steering_) {
      if (std::binary_search(steered_.begin(), steered_.end(), m)) {
        throw ContractViolation("mode partition lists overlap at mode " + std::to_string(m));
      }
    }
  }

  const std::vector<Index>& steering_modes() const noexcept { return steering_; }
  const std::vector<Index>& steered_modes() const noexcept { return steered_; }

  ModePartition swapped() const { return ModePartition(steered_, steering_); }

  void require_within(Index n_modes) const {
    const Index largest = std::max(steering_.back(), steered_.back());
    if (largest >= n_modes) {
      throw ContractViolation("mode partition references mode " + std::to_string(largest) +
                              " of a " + std::to_string(n_modes) + "-mode state");
    }
  }

 private:
  static void require_list_valid(const std::vector<Index>& modes, const char* which) {
    if (modes.empty()) {
      throw ContractViolation(std::string("mode partition: ") + which + " list is empty");
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
      if (modes[i] < 0) {
        throw ContractViolation(std::string("mode partition: ") + which + " list has a negative index");
      }
      if (i > 0 && modes[i] <= modes[i - 1]) {
        throw ContractViolation(std::string("mode partition: ") + which +
                                " list must be strictly increasing");
      }
    }
  }

  std::vector<Index> steering_;
  std::vector<Index> steered_;
};

/// Phase-space row/column indices (x_m, p_m) of the given modes.
inline std::vector<Index> phase_space_indices(const std::vector<Index>& modes) {
  std::vector<Index> idx;
  idx.reserve(2 * modes.size());
  for (Index m : modes) {
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return idx;
}

}  // namespace cvsteer
