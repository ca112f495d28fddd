#ifndef DCP_EXPM_HPP
#define DCP_EXPM_HPP

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "dcp/common.hpp"
#include "dcp/errors.hpp"

namespace dcp {

namespace detail {

// Degree-13 diagonal Pade coefficients and the matching 1-norm bound
// (Higham 2005, "The scaling and squaring method for the matrix exponential
// revisited").
inline constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

inline constexpr double kPade13Theta = 5.371920351148152;

}  // namespace detail

/// exp(M) by scaling and squaring around a [13/13] Pade approximant.
///
/// The input is scaled by 2^-s until its 1-norm falls under the Pade
/// stability bound, the rational approximant is evaluated with six matrix
/// products and one LU solve, and the result is squared s times.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
matrix_exponential(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (m.rows() != m.cols()) {
    throw InvalidDimension("matrix_exponential: matrix must be square");
  }
  if (!m.allFinite()) {
    throw NumericInput("matrix_exponential: non-finite entry in input");
  }
  const Eigen::Index n = m.rows();
  if (n == 0) return Mat(0, 0);

  const Real norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == Real(0)) return Mat::Identity(n, n);
  int squarings = 0;
  if (norm1 > Real(detail::kPade13Theta)) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / Real(detail::kPade13Theta))));
  }
  const Mat a = m.derived() * Scalar(std::ldexp(Real(1), -squarings));

  const auto& b = detail::kPade13;
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;

  const Mat u_inner = a6 * (Real(b[13]) * a6 + Real(b[11]) * a4 + Real(b[9]) * a2) +
                      Real(b[7]) * a6 + Real(b[5]) * a4 + Real(b[3]) * a2 +
                      Real(b[1]) * ident;
  const Mat u = a * u_inner;
  const Mat v = a6 * (Real(b[12]) * a6 + Real(b[10]) * a4 + Real(b[8]) * a2) +
                Real(b[6]) * a6 + Real(b[4]) * a4 + Real(b[2]) * a2 +
                Real(b[0]) * ident;

  Mat result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) {
    result = (result * result).eval();
  }
  return result;
}

}  // namespace dcp

#endif  // DCP_EXPM_HPP
