#ifndef DCP_FOCK_HPP
#define DCP_FOCK_HPP

// Truncated-Fock-space harmonic oscillator: ladder operators, displacement
// operators, coherent states and the phases picked up when displacements are
// composed or carried around a closed loop.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "dcp/common.hpp"
#include "dcp/errors.hpp"
#include "dcp/expm.hpp"

namespace dcp::fock {

/// Normalized state over a truncated Fock basis |0>..|dim-1>.
template <typename Real = double>
class StateVector {
 public:
  using Vector = ComplexVector<Real>;

  /// Normalizes `amplitudes`; throws on dim < 2 or a zero vector.
  static StateVector normalized(Vector amplitudes) {
    if (amplitudes.size() < 2) {
      throw InvalidDimension("StateVector: dim must be >= 2");
    }
    const Real norm = amplitudes.norm();
    if (!(norm > Real(0)) || !std::isfinite(norm)) {
      throw DegenerateInput("StateVector: amplitudes have zero or non-finite norm");
    }
    return StateVector(amplitudes / norm);
  }

  /// |n> in a basis of size dim.
  static StateVector basis(std::size_t dim, std::size_t n) {
    if (n >= dim) throw InvalidParameter("StateVector::basis: n >= dim");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(n)) = Real(1);
    return normalized(std::move(v));
  }

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex<Real> operator[](std::size_t n) const {
    return amplitudes_(static_cast<Eigen::Index>(n));
  }

 private:
  explicit StateVector(Vector v) : amplitudes_(std::move(v)) {}
  Vector amplitudes_;
};

/// Mass and frequency of the oscillator whose ground-state widths set the
/// conversion between (X, P) and the complex displacement index.
template <typename Real = double>
struct OscillatorScales {
  Real mass{1};
  Real omega0{1};
  Real hbar{1};

  static OscillatorScales make(Real mass, Real omega0, Real hbar = Real(1)) {
    if (!(mass > 0) || !(omega0 > 0) || !(hbar > 0)) {
      throw InvalidParameter("OscillatorScales: mass, omega0 and hbar must be positive");
    }
    return {mass, omega0, hbar};
  }

  Real x0() const { return std::sqrt(Real(2) * hbar / (mass * omega0)); }
  Real p0() const { return std::sqrt(Real(2) * hbar * mass * omega0); }

  /// alpha = X/x0 + i P/p0.
  Complex<Real> amplitude(Real x, Real p) const { return {x / x0(), p / p0()}; }
};

template <typename Real = double>
struct LadderPair {
  OperatorMatrix<Real> lowering;
  OperatorMatrix<Real> raising;
};

/// Smallest truncation that admits `alpha` under the |alpha|^2 <= dim/4 guard.
template <typename Real>
std::size_t required_dim(Complex<Real> alpha) {
  const Real need = std::ceil(Real(4) * std::norm(alpha));
  return std::max<std::size_t>(2, static_cast<std::size_t>(need));
}

template <typename Real>
void check_truncation(Complex<Real> alpha, std::size_t dim, const char* where) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw NumericInput(std::string(where) + ": non-finite displacement amplitude");
  }
  if (Real(4) * std::norm(alpha) > static_cast<Real>(dim)) {
    const std::size_t need = required_dim(alpha);
    throw TruncationError(std::string(where) + ": |alpha|^2 = " +
                              std::to_string(static_cast<double>(std::norm(alpha))) +
                              " exceeds dim/4; need dim >= " + std::to_string(need),
                          need);
  }
}

/// Number of leading basis states (n <= dim/2) treated as free of
/// truncation artifacts.
inline Eigen::Index reliable_block(std::size_t dim) {
  return static_cast<Eigen::Index>(dim / 2 + 1);
}

template <typename Real = double>
LadderPair<Real> ladder_operators(std::size_t dim) {
  if (dim < 2) throw InvalidDimension("ladder_operators: dim must be >= 2");
  const auto n = static_cast<Eigen::Index>(dim);
  OperatorMatrix<Real> a = OperatorMatrix<Real>::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    a(k - 1, k) = std::sqrt(static_cast<Real>(k));
  }
  OperatorMatrix<Real> adag = a.adjoint();
  return {std::move(a), std::move(adag)};
}

/// D(alpha) = exp(alpha a^dag - alpha^* a).
template <typename Real>
OperatorMatrix<Real> displacement_operator(Complex<Real> alpha, std::size_t dim) {
  if (dim < 2) throw InvalidDimension("displacement_operator: dim must be >= 2");
  check_truncation(alpha, dim, "displacement_operator");
  const auto ladder = ladder_operators<Real>(dim);
  const OperatorMatrix<Real> generator =
      alpha * ladder.raising - std::conj(alpha) * ladder.lowering;
  return matrix_exponential(generator);
}

/// Analytic coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!), renormalized
/// over the truncated basis.
template <typename Real>
StateVector<Real> coherent_state(Complex<Real> alpha, std::size_t dim) {
  if (dim < 2) throw InvalidDimension("coherent_state: dim must be >= 2");
  check_truncation(alpha, dim, "coherent_state");
  ComplexVector<Real> c(static_cast<Eigen::Index>(dim));
  c(0) = std::exp(-std::norm(alpha) / Real(2));
  for (Eigen::Index n = 1; n < c.size(); ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<Real>(n));
  }
  return StateVector<Real>::normalized(std::move(c));
}

/// lambda in D(beta) D(alpha) = lambda D(alpha + beta), estimated as the
/// least-squares ratio of the two operators' reliable blocks. Products are
/// taken in the full space; only block entries are compared.
template <typename Real>
Complex<Real> composition_scalar(Complex<Real> alpha, Complex<Real> beta, std::size_t dim) {
  check_truncation(alpha, dim, "composition_phase");
  check_truncation(beta, dim, "composition_phase");
  check_truncation(alpha + beta, dim, "composition_phase");
  const OperatorMatrix<Real> composed =
      displacement_operator(beta, dim) * displacement_operator(alpha, dim);
  const OperatorMatrix<Real> direct = displacement_operator(alpha + beta, dim);
  const Eigen::Index block = reliable_block(dim);
  const auto c = composed.topLeftCorner(block, block);
  const auto d = direct.topLeftCorner(block, block);
  return d.conjugate().cwiseProduct(c).sum() / d.squaredNorm();
}

/// Phase of D(beta) D(alpha) relative to D(alpha + beta), in (-pi, pi].
/// Equals Im(alpha^* beta) modulo 2 pi.
template <typename Real>
Real composition_phase(Complex<Real> alpha, Complex<Real> beta, std::size_t dim) {
  return wrap_phase(std::arg(composition_scalar(alpha, beta, dim)));
}

/// D(-beta) D(-alpha) D(beta) D(alpha).
template <typename Real>
OperatorMatrix<Real> loop_operator(Complex<Real> alpha, Complex<Real> beta, std::size_t dim) {
  check_truncation(alpha, dim, "loop_phase");
  check_truncation(beta, dim, "loop_phase");
  check_truncation(alpha + beta, dim, "loop_phase");
  const OperatorMatrix<Real> da = displacement_operator(alpha, dim);
  const OperatorMatrix<Real> db = displacement_operator(beta, dim);
  // D(-x) = D(x)^dag
  return db.adjoint() * da.adjoint() * db * da;
}

/// <state| D(-beta) D(-alpha) D(beta) D(alpha) |state>.
template <typename Real>
Complex<Real> loop_overlap(Complex<Real> alpha, Complex<Real> beta,
                           const StateVector<Real>& state) {
  const OperatorMatrix<Real> loop = loop_operator(alpha, beta, state.dim());
  return state.amplitudes().dot(loop * state.amplitudes());
}

/// Closed-loop phase phi_c in (-pi, pi]; equals 2 Im(alpha^* beta) modulo
/// 2 pi for any state well inside the truncation.
template <typename Real>
Real loop_phase(Complex<Real> alpha, Complex<Real> beta, const StateVector<Real>& state) {
  const Complex<Real> overlap = loop_overlap(alpha, beta, state);
  if (std::abs(overlap) < Real(0.99)) {
    throw TruncationCorruption(
        "loop_phase: overlap magnitude " + std::to_string(static_cast<double>(std::abs(overlap))) +
            " < 0.99; dim too small for this loop or state",
        static_cast<double>(std::abs(overlap)));
  }
  return wrap_phase(std::arg(overlap));
}

/// x = x0 (a + a^dag) / 2.
template <typename Real>
OperatorMatrix<Real> position_operator(std::size_t dim, const OscillatorScales<Real>& scales) {
  const auto ladder = ladder_operators<Real>(dim);
  return (scales.x0() / Real(2)) * (ladder.lowering + ladder.raising);
}

/// p = p0 (a - a^dag) / (2i).
template <typename Real>
OperatorMatrix<Real> momentum_operator(std::size_t dim, const OscillatorScales<Real>& scales) {
  const auto ladder = ladder_operators<Real>(dim);
  return (ladder.lowering - ladder.raising) * (scales.p0() / Complex<Real>(0, 2));
}

/// Quantized displacement Hamiltonian (p X - x P)/T.
template <typename Real>
OperatorMatrix<Real> displacement_hamiltonian_operator(Real x_shift, Real p_shift, Real duration,
                                                       const OscillatorScales<Real>& scales,
                                                       std::size_t dim) {
  if (!(duration > 0)) {
    throw InvalidDuration("displacement_hamiltonian: duration must be positive");
  }
  return (momentum_operator(dim, scales) * x_shift - position_operator(dim, scales) * p_shift) /
         duration;
}

/// exp(-i H_dis T / hbar); coincides with D(X/x0 + i P/p0) for any T.
template <typename Real>
OperatorMatrix<Real> displacement_from_hamiltonian(Real x_shift, Real p_shift, Real duration,
                                                   const OscillatorScales<Real>& scales,
                                                   std::size_t dim) {
  if (!(duration > 0)) {
    throw InvalidDuration("displacement_from_hamiltonian: duration must be positive");
  }
  check_truncation(scales.amplitude(x_shift, p_shift), dim, "displacement_from_hamiltonian");
  const OperatorMatrix<Real> h =
      displacement_hamiltonian_operator(x_shift, p_shift, duration, scales, dim);
  return matrix_exponential(h * Complex<Real>(0, -duration / scales.hbar));
}

/// Random normalized state supported on |0>..|support-1>, with gaussian
/// real and imaginary parts.
template <typename Real = double, typename Rng>
StateVector<Real> random_state(std::size_t dim, std::size_t support, Rng& rng) {
  if (dim < 2) throw InvalidDimension("random_state: dim must be >= 2");
  if (support == 0 || support > dim) {
    throw InvalidParameter("random_state: support must be in [1, dim]");
  }
  std::normal_distribution<Real> gauss(Real(0), Real(1));
  ComplexVector<Real> v = ComplexVector<Real>::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t n = 0; n < support; ++n) {
    const Real re = gauss(rng);
    const Real im = gauss(rng);
    v(static_cast<Eigen::Index>(n)) = Complex<Real>(re, im);
  }
  return StateVector<Real>::normalized(std::move(v));
}

}  // namespace dcp::fock

#endif  // DCP_FOCK_HPP
