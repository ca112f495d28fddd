#ifndef DCP_COMMON_HPP
#define DCP_COMMON_HPP

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace dcp {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using OperatorMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
constexpr Real kPi = std::numbers::pi_v<Real>;

template <typename Real>
constexpr Real kTwoPi = Real(2) * std::numbers::pi_v<Real>;

/// Maps any angle onto (-pi, pi].
template <typename Real>
Real wrap_phase(Real angle) {
  Real r = std::remainder(angle, kTwoPi<Real>);  // [-pi, pi]
  if (r <= -kPi<Real>) r += kTwoPi<Real>;
  return r;
}

/// Signed distance between two angles, taken on the circle.
template <typename Real>
Real phase_distance(Real a, Real b) {
  return wrap_phase(a - b);
}

}  // namespace dcp

#endif  // DCP_COMMON_HPP
