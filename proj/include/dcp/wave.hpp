#ifndef DCP_WAVE_HPP
#define DCP_WAVE_HPP

// Classical wave displacements on a periodic, uniformly sampled domain:
// D_p(X) f(x) = f(x - X) and D_f(K) f(x) = e^{iKx} f(x).
// The same code covers the time/frequency pair under x -> t, K -> Omega.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "dcp/common.hpp"
#include "dcp/errors.hpp"

namespace dcp::wave {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Complex samples of a function with period L at x_j = j L / n.
template <typename Real = double>
class SampledWave {
 public:
  using Vector = ComplexVector<Real>;

  SampledWave(Real length, Vector values) : length_(length), values_(std::move(values)) {
    if (!(length_ > 0) || !std::isfinite(length_)) {
      throw InvalidParameter("SampledWave: period length must be positive and finite");
    }
    const auto n = static_cast<std::size_t>(values_.size());
    if (n < 8 || !is_power_of_two(n)) {
      throw InvalidDimension("SampledWave: n_samples must be a power of two >= 8");
    }
  }

  /// Samples `f` on the grid.
  template <typename F>
  static SampledWave sample(Real length, std::size_t n_samples, F&& f) {
    Vector v(static_cast<Eigen::Index>(n_samples));
    for (std::size_t j = 0; j < n_samples; ++j) {
      v(static_cast<Eigen::Index>(j)) =
          Complex<Real>(f(length * static_cast<Real>(j) / static_cast<Real>(n_samples)));
    }
    return SampledWave(length, std::move(v));
  }

  Real length() const { return length_; }
  std::size_t n_samples() const { return static_cast<std::size_t>(values_.size()); }
  Real spacing() const { return length_ / static_cast<Real>(n_samples()); }
  Real x(std::size_t j) const { return spacing() * static_cast<Real>(j); }
  const Vector& values() const { return values_; }

 private:
  Real length_;
  Vector values_;
};

/// Discrete Fourier coefficients c_n, n in [-N/2, N/2), normalized so that
/// f(x_j) = sum_n c_n exp(i 2 pi n x_j / L).
template <typename Real = double>
class FourierCoefficients {
 public:
  using Vector = ComplexVector<Real>;

  FourierCoefficients(Real length, Vector centered)
      : length_(length), coeffs_(std::move(centered)) {}

  Real length() const { return length_; }
  std::size_t size() const { return static_cast<std::size_t>(coeffs_.size()); }
  int min_mode() const { return -static_cast<int>(size() / 2); }
  int max_mode() const { return static_cast<int>(size() / 2) - 1; }

  Complex<Real>& operator()(int mode) { return coeffs_(index(mode)); }
  Complex<Real> operator()(int mode) const { return coeffs_(index(mode)); }

  /// Coefficients ordered from min_mode() to max_mode().
  const Vector& centered() const { return coeffs_; }

 private:
  Eigen::Index index(int mode) const {
    if (mode < min_mode() || mode > max_mode()) {
      throw InvalidParameter("FourierCoefficients: mode " + std::to_string(mode) +
                             " outside [-N/2, N/2)");
    }
    return static_cast<Eigen::Index>(mode - min_mode());
  }

  Real length_;
  Vector coeffs_;
};

template <typename Real>
FourierCoefficients<Real> fourier_series(const SampledWave<Real>& wave) {
  const auto n = static_cast<Eigen::Index>(wave.n_samples());
  std::vector<Complex<Real>> in(wave.values().data(), wave.values().data() + n);
  std::vector<Complex<Real>> out;
  Eigen::FFT<Real> fft;
  fft.fwd(out, in);

  ComplexVector<Real> centered(n);
  const Eigen::Index half = n / 2;
  const Real inv_n = Real(1) / static_cast<Real>(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    // centered index k corresponds to mode k - half, stored at (k - half) mod n
    centered(k) = out[static_cast<std::size_t>((k - half + n) % n)] * inv_n;
  }
  return FourierCoefficients<Real>(wave.length(), std::move(centered));
}

template <typename Real>
SampledWave<Real> inverse_fourier_series(const FourierCoefficients<Real>& coeffs) {
  const auto n = static_cast<Eigen::Index>(coeffs.size());
  const Eigen::Index half = n / 2;
  std::vector<Complex<Real>> in(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    in[static_cast<std::size_t>((k - half + n) % n)] = coeffs.centered()(k) * static_cast<Real>(n);
  }
  std::vector<Complex<Real>> out;
  Eigen::FFT<Real> fft;
  fft.inv(out, in);  // Eigen scales the inverse by 1/n
  ComplexVector<Real> values = Eigen::Map<const ComplexVector<Real>>(out.data(), n);
  return SampledWave<Real>(coeffs.length(), std::move(values));
}

/// exp(-i 2 pi * mode * shift / length) with the argument reduced modulo one
/// period before the trig evaluation.
template <typename Real>
Complex<Real> shift_factor(int mode, Real shift, Real length) {
  const Real cycles = static_cast<Real>(mode) * shift / length;
  const Real frac = cycles - std::round(cycles);
  return std::polar(Real(1), -kTwoPi<Real> * frac);
}

/// f(x) -> f(x - X), band-limited interpolation for off-grid X.
template <typename Real>
SampledWave<Real> position_displace(const SampledWave<Real>& wave, Real shift) {
  if (!std::isfinite(shift)) throw NumericInput("position_displace: non-finite shift");
  if (shift == Real(0)) return wave;
  auto coeffs = fourier_series(wave);
  for (int mode = coeffs.min_mode(); mode <= coeffs.max_mode(); ++mode) {
    coeffs(mode) *= shift_factor(mode, shift, wave.length());
  }
  return inverse_fourier_series(coeffs);
}

/// Integer mode shift m = K L / (2 pi); throws if K is off the 2 pi / L grid.
template <typename Real>
int commensurate_mode(Real k, Real length, std::size_t n_samples) {
  if (!std::isfinite(k)) throw NumericInput("frequency_displace: non-finite K");
  const Real exact = k * length / kTwoPi<Real>;
  const Real nearest = std::round(exact);
  const Real tol = Real(1e-9) * std::max(Real(1), std::abs(exact));
  if (std::abs(exact - nearest) > tol) {
    const Real nearest_k = nearest * kTwoPi<Real> / length;
    throw CommensurabilityError("frequency_displace: K = " + std::to_string(static_cast<double>(k)) +
                                    " is not a multiple of 2*pi/L; nearest valid K = " +
                                    std::to_string(static_cast<double>(nearest_k)),
                                static_cast<double>(nearest_k));
  }
  const Real limit = static_cast<Real>(n_samples / 4);
  if (std::abs(nearest) > limit) {
    throw AliasingError("frequency_displace: |m| = " + std::to_string(static_cast<long>(nearest)) +
                        " exceeds n_samples/4 = " + std::to_string(n_samples / 4));
  }
  return static_cast<int>(nearest);
}

/// f(x) -> e^{iKx} f(x) with K = 2 pi m / L.
template <typename Real>
SampledWave<Real> frequency_displace(const SampledWave<Real>& wave, Real k) {
  const int m = commensurate_mode(k, wave.length(), wave.n_samples());
  if (m == 0) return wave;
  const auto n = static_cast<long long>(wave.n_samples());
  ComplexVector<Real> out = wave.values();
  for (long long j = 0; j < n; ++j) {
    // phase 2 pi m j / N, reduced exactly in integers
    const long long r = ((static_cast<long long>(m) * j) % n + n) % n;
    out(static_cast<Eigen::Index>(j)) *=
        std::polar(Real(1), kTwoPi<Real> * static_cast<Real>(r) / static_cast<Real>(n));
  }
  return SampledWave<Real>(wave.length(), std::move(out));
}

template <typename Real>
struct LoopResult {
  Real phi;       // radians, (-pi, pi]
  Real residual;  // ||g - e^{i phi} f|| / ||f||
};

/// g = D_f(-K) D_p(-X) D_f(K) D_p(X) f, phi = arg <f, g>.
template <typename Real>
LoopResult<Real> loop_phase(const SampledWave<Real>& wave, Real shift, Real k) {
  const Real norm = wave.values().norm();
  if (!(norm > Real(0))) throw DegenerateInput("wave loop_phase: zero-norm wave");
  commensurate_mode(k, wave.length(), wave.n_samples());

  const auto g = frequency_displace(
      position_displace(frequency_displace(position_displace(wave, shift), k), -shift), -k);

  const Complex<Real> overlap = wave.values().dot(g.values());
  const Real phi = wrap_phase(std::arg(overlap));
  const Real residual =
      (g.values() - std::polar(Real(1), phi) * wave.values()).norm() / norm;
  return {phi, residual};
}

}  // namespace dcp::wave

#endif  // DCP_WAVE_HPP
