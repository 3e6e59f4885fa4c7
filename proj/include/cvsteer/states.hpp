#pragma once

#include <cmath>

#include "cvsteer/symplectic.hpp"
#include "cvsteer/types.hpp"

namespace cvsteer {

/// Squeezing s >= 0 of the initial two-mode resource state. Numeric guard at
/// 25: determinant-degree products of cosh(2s) must stay finite in double.
template <typename Scalar>
class SqueezingParam {
 public:
  static constexpr double max_value = 25.0;

  explicit SqueezingParam(Scalar value) : value_(value) {
    if (!(value_ >= Scalar(0))) {
      throw NumericDomainError("squeezing must be a non-negative real");
    }
    if (value_ > Scalar(max_value)) {
      throw RangeLimitError("squeezing exceeds the overflow guard of 25");
    }
  }

  Scalar value() const noexcept { return value_; }

 private:
  Scalar value_;
};

template <typename Scalar = double>
CovarianceMatrix<Scalar> vacuum(Index n_modes) {
  if (n_modes < 1) {
    throw ContractViolation("vacuum: n_modes must be >= 1");
  }
  return CovarianceMatrix<Scalar>(DenseMatrix<Scalar>::Identity(2 * n_modes, 2 * n_modes));
}

/// Two-mode squeezed vacuum: diagonal blocks cosh(2s) I2, cross blocks
/// sinh(2s) Z2 with Z2 = diag(1, -1). The sinh cross block is what purity
/// demands: det sigma = (cosh^2(2s) - sinh^2(2s))^2 = 1.
template <typename Scalar>
CovarianceMatrix<Scalar> two_mode_squeezed(SqueezingParam<Scalar> s) {
  const Scalar ch = std::cosh(Scalar(2) * s.value());
  const Scalar sh = std::sinh(Scalar(2) * s.value());
  DenseMatrix<Scalar> m(4, 4);
  m << ch, 0, sh, 0,
       0, ch, 0, -sh,
       sh, 0, ch, 0,
       0, -sh, 0, ch;
  return CovarianceMatrix<Scalar>(std::move(m));
}

}  // namespace cvsteer
