#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <type_traits>
#include <utility>

#include "cvsteer/hawking.hpp"
#include "cvsteer/states.hpp"
#include "cvsteer/symplectic.hpp"
#include "cvsteer/types.hpp"

namespace cvsteer {

enum class SteeringDirection {
  alice_to_bob,
  bob_to_alice,
  bob_to_antibob,
  antibob_to_bob,
};

namespace detail {

inline std::vector<Index> sorted_union(const ModePartition& partition) {
  std::vector<Index> modes = partition.steering_modes();
  modes.insert(modes.end(), partition.steered_modes().begin(), partition.steered_modes().end());
  std::sort(modes.begin(), modes.end());
  return modes;
}

// The state restricted to the modes the partition names.
template <typename Scalar>
CovarianceMatrix<Scalar> restrict_to_partition(const CovarianceMatrix<Scalar>& sigma,
                                               const ModePartition& partition) {
  const std::vector<Index> kept = sorted_union(partition);
  if (static_cast<Index>(kept.size()) == sigma.n_modes()) {
    return sigma;
  }
  return partial_trace(sigma, kept);
}

}  // namespace detail

/// Gaussian steering of the steered party by the steering party's Gaussian
/// measurements: max{0, -sum ln nu} over the sub-unit symplectic eigenvalues
/// nu of the Schur complement of the steering block. Zero exactly when the
/// steered party admits a local description conditioned on the steering
/// party's outcomes.
template <typename Scalar>
Scalar gaussian_steering(const CovarianceMatrix<Scalar>& sigma, const ModePartition& partition) {
  const auto report = check_bona_fide(sigma);
  // the physicality floor follows the entry scale: the computed minimum
  // eigenvalue of sigma + i Omega carries rounding of order eps * |sigma|
  const Scalar floor = std::max(Scalar(tol::physicality),
                                Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
                                    sigma.mat().cwiseAbs().maxCoeff());
  if (report.min_eigenvalue < -floor) {
    throw NumericDomainError("gaussian_steering: state is unphysical, min eig(sigma + i Omega) = " +
                             std::to_string(static_cast<double>(report.min_eigenvalue)));
  }
  const auto complement = schur_complement(sigma, partition);
  const auto nus = symplectic_eigenvalues(complement);
  Scalar total = Scalar(0);
  for (Index j = 0; j < nus.size(); ++j) {
    if (nus[j] < Scalar(1)) {
      total -= std::log(nus[j]);
    }
  }
  return std::max(Scalar(0), total);
}

/// Signed one-mode-steered value (1/2) ln(det A / det sigma), kept unclamped
/// for root finding; negative means nonsteerable with margin.
template <typename Scalar>
Scalar steering_one_mode_steered_unclamped(const CovarianceMatrix<Scalar>& sigma,
                                           const ModePartition& partition) {
  if (partition.steered_modes().size() != 1) {
    throw ContractViolation("steering_one_mode_steered: steered party must be exactly one mode");
  }
  partition.require_within(sigma.n_modes());
  const auto restricted = detail::restrict_to_partition(sigma, partition);
  const auto a_idx = phase_space_indices(partition.steering_modes());
  const DenseMatrix<Scalar> a = sigma.mat()(a_idx, a_idx);
  const Scalar det_a = a.determinant();
  const Scalar det_sigma = restricted.mat().determinant();
  if (!(det_a > Scalar(0)) || !(det_sigma > Scalar(0))) {
    throw NumericDomainError("steering_one_mode_steered: non-positive block determinant");
  }
  return Scalar(0.5) * (std::log(det_a) - std::log(det_sigma));
}

/// Determinant form of the steering measure for a one-mode steered party:
/// max{0, (1/2) ln(det A / det sigma)}. Agrees with gaussian_steering on its
/// whole domain.
template <typename Scalar>
Scalar steering_one_mode_steered(const CovarianceMatrix<Scalar>& sigma,
                                 const ModePartition& partition) {
  return std::max(Scalar(0), steering_one_mode_steered_unclamped(sigma, partition));
}

/// Smallest eigenvalue of sigma + i (0 on the steering modes, Omega on the
/// steered modes). Non-negative (within tolerance) exactly when the state is
/// nonsteerable in that direction.
template <typename Scalar>
Scalar nonsteerability_min_eigenvalue(const CovarianceMatrix<Scalar>& sigma,
                                      const ModePartition& partition) {
  partition.require_within(sigma.n_modes());
  const auto restricted = detail::restrict_to_partition(sigma, partition);
  const std::vector<Index> kept = detail::sorted_union(partition);

  using Complex = std::complex<Scalar>;
  using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  ComplexMatrix h = restricted.mat().template cast<Complex>();
  for (std::size_t pos = 0; pos < kept.size(); ++pos) {
    const bool steered = std::binary_search(partition.steered_modes().begin(),
                                            partition.steered_modes().end(), kept[pos]);
    if (steered) {
      h(2 * pos, 2 * pos + 1) += Complex(0, 1);
      h(2 * pos + 1, 2 * pos) += Complex(0, -1);
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Signed logs behind the four channel-family steerings, with C = cosh(2s):
///   A->B:        ln C - ln(cosh^2 r + C sinh^2 r)
///   B->A:        ln(C cosh^2 r + sinh^2 r) - ln(cosh^2 r + C sinh^2 r)
///   B->antiB:    ln(cosh^2 r + sinh^2 r / C)
///   antiB->B:    ln(sinh^2 r + cosh^2 r / C)
template <typename Scalar>
Scalar closed_form_steering_unclamped(SqueezingParam<Scalar> s, HawkingParam<Scalar> r,
                                      SteeringDirection direction) {
  const Scalar c2s = std::cosh(Scalar(2) * s.value());
  const Scalar ch2 = std::cosh(r.value()) * std::cosh(r.value());
  const Scalar sh2 = std::sinh(r.value()) * std::sinh(r.value());
  switch (direction) {
    case SteeringDirection::alice_to_bob:
      return std::log(c2s) - std::log(ch2 + c2s * sh2);
    case SteeringDirection::bob_to_alice:
      return std::log(c2s * ch2 + sh2) - std::log(ch2 + c2s * sh2);
    case SteeringDirection::bob_to_antibob:
      return std::log(ch2 + sh2 / c2s);
    case SteeringDirection::antibob_to_bob:
      return std::log(sh2 + ch2 / c2s);
  }
  throw ContractViolation("closed_form_steering: unknown direction");
}

template <typename Scalar>
Scalar closed_form_steering(SqueezingParam<Scalar> s, HawkingParam<Scalar> r,
                            SteeringDirection direction) {
  return std::max(Scalar(0), closed_form_steering_unclamped(s, r, direction));
}

/// Directional steerings and their absolute difference for one bipartition.
/// The unclamped fields keep the signed one-mode-steered values when the
/// respective steered party is a single mode (they equal the clamped values
/// otherwise).
template <typename Scalar>
struct SteeringReport {
  Scalar g_forward;
  Scalar g_backward;
  Scalar g_forward_unclamped;
  Scalar g_backward_unclamped;
  Scalar asymmetry;
  bool forward_steerable;
  bool backward_steerable;
  ModePartition partition;
  std::optional<std::pair<Scalar, Scalar>> params;  // (s, r) for channel families
};

template <typename Scalar>
SteeringReport<Scalar> steering_asymmetry(
    const CovarianceMatrix<Scalar>& sigma, const ModePartition& partition,
    std::optional<std::pair<std::type_identity_t<Scalar>, std::type_identity_t<Scalar>>> params =
        {}) {
  const ModePartition backward_partition = partition.swapped();
  const Scalar forward = gaussian_steering(sigma, partition);
  const Scalar backward = gaussian_steering(sigma, backward_partition);
  const Scalar forward_unclamped = partition.steered_modes().size() == 1
                                       ? steering_one_mode_steered_unclamped(sigma, partition)
                                       : forward;
  const Scalar backward_unclamped = backward_partition.steered_modes().size() == 1
                                        ? steering_one_mode_steered_unclamped(sigma, backward_partition)
                                        : backward;
  return SteeringReport<Scalar>{forward,
                                backward,
                                forward_unclamped,
                                backward_unclamped,
                                std::abs(backward - forward),
                                forward > Scalar(tol::steerable),
                                backward > Scalar(tol::steerable),
                                partition,
                                params};
}

}  // namespace cvsteer
