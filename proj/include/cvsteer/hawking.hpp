#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "cvsteer/states.hpp"
#include "cvsteer/symplectic.hpp"
#include "cvsteer/types.hpp"

namespace cvsteer {

/// Squeezing r >= 0 of the amplification channel that models the thermal
/// horizon noise; tied to the mode frequency Omega and temperature T through
/// sinh(r) = (e^{Omega/T} - 1)^{-1/2}. Guarded at 25 like SqueezingParam.
template <typename Scalar>
class HawkingParam {
 public:
  static constexpr double max_value = 25.0;

  explicit HawkingParam(Scalar value) : value_(value) {
    if (!(value_ >= Scalar(0))) {
      throw NumericDomainError("channel squeezing must be a non-negative real");
    }
    if (value_ > Scalar(max_value)) {
      throw RangeLimitError("channel squeezing exceeds the overflow guard of 25");
    }
  }

  Scalar value() const noexcept { return value_; }

 private:
  Scalar value_;
};

/// 4x4 two-mode squeezer on the (B, antiB) pair: diagonal cosh r, cross
/// blocks sinh r in the Z2 sign pattern. S(0) is the identity.
template <typename Scalar>
SymplecticMatrix<Scalar> squeezer_symplectic(HawkingParam<Scalar> r) {
  const Scalar ch = std::cosh(r.value());
  const Scalar sh = std::sinh(r.value());
  DenseMatrix<Scalar> m(4, 4);
  m << ch, 0, sh, 0,
       0, ch, 0, -sh,
       sh, 0, ch, 0,
       0, -sh, 0, ch;
  return SymplecticMatrix<Scalar>(std::move(m));
}

/// Pure three-mode description (A, B, antiB) of the channel acting on one arm
/// of the two-mode squeezed resource.
///
/// The purity guard widens with the squared entry scale: the determinant of
/// the stored entries drifts by roughly eps times the squared condition
/// number, which exceeds any fixed tolerance at large (s, r).
template <typename Scalar>
class ThreeModeState {
 public:
  static constexpr Index mode_alice = 0;
  static constexpr Index mode_bob = 1;
  static constexpr Index mode_antibob = 2;

  ThreeModeState(CovarianceMatrix<Scalar> cm, SqueezingParam<Scalar> s, HawkingParam<Scalar> r)
      : cm_(std::move(cm)), s_(s), r_(r) {
    if (cm_.n_modes() != 3) {
      throw ContractViolation("ThreeModeState: expected 3 modes, got " +
                              std::to_string(cm_.n_modes()));
    }
    const Scalar det = cm_.mat().determinant();
    const Scalar scale = cm_.mat().cwiseAbs().maxCoeff();
    const Scalar allowed = std::max(Scalar(tol::spectral),
                                    Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale * scale);
    if (std::abs(det - Scalar(1)) > allowed) {
      throw NumericDomainError("ThreeModeState: state is not pure, det = " +
                               std::to_string(static_cast<double>(det)));
    }
  }

  const CovarianceMatrix<Scalar>& cm() const noexcept { return cm_; }
  SqueezingParam<Scalar> squeezing() const noexcept { return s_; }
  HawkingParam<Scalar> hawking() const noexcept { return r_; }

 private:
  CovarianceMatrix<Scalar> cm_;
  SqueezingParam<Scalar> s_;
  HawkingParam<Scalar> r_;
};

/// Unitary dilation of the channel:
/// (I_A + S_{B,antiB}(r)) (sigma_AB(s) + I_antiB) (I_A + S_{B,antiB}(r))^T
/// with + meaning direct sum. Tracing out antiB (or A) recovers the
/// closed-form reduced states below.
template <typename Scalar>
ThreeModeState<Scalar> dilate(SqueezingParam<Scalar> s, HawkingParam<Scalar> r) {
  const auto embedded = direct_sum(SymplecticMatrix<Scalar>::identity(1), squeezer_symplectic(r));
  const auto pre_channel = direct_sum(two_mode_squeezed(s), vacuum<Scalar>(1));
  return ThreeModeState<Scalar>(apply_symplectic(pre_channel, embedded), s, r);
}

/// Closed form of the (A, B) reduced state: blocks cosh(2s) I2,
/// cosh(r) sinh(2s) Z2 and [cosh(2s) cosh^2 r + sinh^2 r] I2.
template <typename Scalar>
CovarianceMatrix<Scalar> reduced_ab(SqueezingParam<Scalar> s, HawkingParam<Scalar> r) {
  const Scalar c2s = std::cosh(Scalar(2) * s.value());
  const Scalar s2s = std::sinh(Scalar(2) * s.value());
  const Scalar ch = std::cosh(r.value());
  const Scalar sh = std::sinh(r.value());
  const Scalar aa = c2s;
  const Scalar cc = ch * s2s;
  const Scalar bb = c2s * ch * ch + sh * sh;
  DenseMatrix<Scalar> m(4, 4);
  m << aa, 0, cc, 0,
       0, aa, 0, -cc,
       cc, 0, bb, 0,
       0, -cc, 0, bb;
  return CovarianceMatrix<Scalar>(std::move(m));
}

/// Closed form of the (B, antiB) reduced state: blocks
/// [cosh(2s) cosh^2 r + sinh^2 r] I2, cosh^2(s) sinh(2r) Z2 and
/// [cosh^2 r + cosh(2s) sinh^2 r] I2. Its determinant is cosh^2(2s) for
/// every r.
template <typename Scalar>
CovarianceMatrix<Scalar> reduced_bbbar(SqueezingParam<Scalar> s, HawkingParam<Scalar> r) {
  const Scalar c2s = std::cosh(Scalar(2) * s.value());
  const Scalar cs = std::cosh(s.value());
  const Scalar ch = std::cosh(r.value());
  const Scalar sh = std::sinh(r.value());
  const Scalar aa = c2s * ch * ch + sh * sh;
  const Scalar cc = cs * cs * std::sinh(Scalar(2) * r.value());
  const Scalar bb = ch * ch + c2s * sh * sh;
  DenseMatrix<Scalar> m(4, 4);
  m << aa, 0, cc, 0,
       0, aa, 0, -cc,
       cc, 0, bb, 0,
       0, -cc, 0, bb;
  return CovarianceMatrix<Scalar>(std::move(m));
}

/// Channel squeezing from mode frequency and temperature:
/// r = asinh((e^{Omega/T} - 1)^{-1/2}), strictly increasing in T.
template <typename Scalar>
HawkingParam<Scalar> r_from_temperature(Scalar omega, Scalar temperature) {
  if (!(omega > Scalar(0)) || !(temperature > Scalar(0))) {
    throw NumericDomainError("r_from_temperature: omega and temperature must be positive");
  }
  const Scalar expm1_term = std::expm1(omega / temperature);  // overflows to +inf, r -> 0
  const Scalar r = std::asinh(Scalar(1) / std::sqrt(expm1_term));
  if (r > Scalar(HawkingParam<Scalar>::max_value)) {
    throw RangeLimitError("r_from_temperature: temperature maps past the channel squeezing guard");
  }
  return HawkingParam<Scalar>(r);
}

/// Inverse map T = Omega / ln(1 + 1/sinh^2 r). The r = 0 limit (T = 0) is not
/// representable here; callers emitting tables handle it as an exact zero.
template <typename Scalar>
Scalar temperature_from_r(Scalar omega, Scalar r) {
  if (!(omega > Scalar(0))) {
    throw NumericDomainError("temperature_from_r: omega must be positive");
  }
  if (!(r > Scalar(0))) {
    throw NumericDomainError("temperature_from_r: r must be positive (T -> 0 as r -> 0)");
  }
  const Scalar sh = std::sinh(r);
  return omega / std::log1p(Scalar(1) / (sh * sh));
}

/// Entry point in terms of surface gravity, T = kappa / (2 pi).
template <typename Scalar>
HawkingParam<Scalar> r_from_surface_gravity(Scalar omega, Scalar kappa) {
  if (!(kappa > Scalar(0))) {
    throw NumericDomainError("r_from_surface_gravity: kappa must be positive");
  }
  return r_from_temperature(omega, kappa / (Scalar(2) * std::numbers::pi_v<Scalar>));
}

}  // namespace cvsteer
