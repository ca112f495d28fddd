#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dcp/errors.hpp"
#include "dcp/wave.hpp"

using namespace dcp;
using cd = std::complex<double>;
using Wave = wave::SampledWave<double>;

namespace {

constexpr double kTau = 2.0 * M_PI;

// O(N^2) DFT written straight from the series definition.
std::vector<cd> naive_coefficients(const Wave& w) {
  const auto n = static_cast<int>(w.n_samples());
  std::vector<cd> c(static_cast<std::size_t>(n));
  for (int mode = -n / 2; mode < n / 2; ++mode) {
    cd acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += w.values()(j) * std::polar(1.0, -kTau * mode * j / n);
    }
    c[static_cast<std::size_t>(mode + n / 2)] = acc / static_cast<double>(n);
  }
  return c;
}

// Band-limited to |n| < N/4 so any admissible frequency shift stays inside
// the sampled band.
Wave random_wave(std::mt19937_64& rng, double length, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  wave::FourierCoefficients<double> c(length, ComplexVector<double>::Zero(static_cast<Eigen::Index>(n)));
  const int band = static_cast<int>(n / 4);
  for (int mode = -band + 1; mode < band; ++mode) c(mode) = cd(g(rng), g(rng));
  return wave::inverse_fourier_series(c);
}

double max_diff(const Wave& a, const Wave& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

Wave sine(double length, std::size_t n, int k = 1, double phase = 0.0) {
  return Wave::sample(length, n, [&](double x) { return std::sin(kTau * k * x / length + phase); });
}

}  // namespace

TEST_CASE("sampled wave invariants") {
  CHECK_THROWS_AS(Wave(1.0, ComplexVector<double>::Zero(4)), InvalidDimension);
  CHECK_THROWS_AS(Wave(1.0, ComplexVector<double>::Zero(12)), InvalidDimension);
  CHECK_THROWS_AS(Wave(0.0, ComplexVector<double>::Zero(8)), InvalidParameter);
  const Wave w(2.0, ComplexVector<double>::Zero(16));
  CHECK(w.x(4) == doctest::Approx(0.5));
}

TEST_CASE("fourier series of a constant") {
  const auto w = Wave::sample(3.0, 32, [](double) { return 1.0; });
  const auto c = wave::fourier_series(w);
  for (int m = c.min_mode(); m <= c.max_mode(); ++m) {
    CHECK(std::abs(c(m) - (m == 0 ? cd(1.0) : cd(0.0))) < 1e-15);
  }
}

TEST_CASE("fourier series of sin(2 pi x / L)") {
  const auto c = wave::fourier_series(sine(1.5, 64));
  CHECK(std::abs(c(1) - 1.0 / cd(0, 2)) < 1e-15);
  CHECK(std::abs(c(-1) + 1.0 / cd(0, 2)) < 1e-15);
  for (int m = c.min_mode(); m <= c.max_mode(); ++m) {
    if (m != 1 && m != -1) CHECK(std::abs(c(m)) < 1e-15);
  }
}

TEST_CASE("fourier series matches the naive DFT and round-trips") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t n : {8u, 64u, 512u}) {
    ComplexVector<double> v(static_cast<Eigen::Index>(n));
    for (auto& z : v) z = cd(g(rng), g(rng));
    const Wave w(2.0, v);
    const auto c = wave::fourier_series(w);
    const auto ref = naive_coefficients(w);
    for (int m = c.min_mode(); m <= c.max_mode(); ++m) {
      CHECK(std::abs(c(m) - ref[static_cast<std::size_t>(m - c.min_mode())]) < 1e-12);
    }
    const auto back = wave::inverse_fourier_series(c);
    CHECK((back.values() - w.values()).norm() / w.values().norm() < 1e-12);
  }
}

TEST_CASE("position shift: zero, full period and quarter period") {
  const double length = 2.5;
  const auto w = sine(length, 64);
  CHECK(max_diff(wave::position_displace(w, 0.0), w) == 0.0);
  CHECK(max_diff(wave::position_displace(w, length), w) < 1e-12);

  const auto shifted = wave::position_displace(w, length / 4);
  for (std::size_t j = 0; j < w.n_samples(); ++j) {
    const double expected = std::sin(kTau * (w.x(j) - length / 4) / length);
    CHECK(std::abs(shifted.values()(static_cast<Eigen::Index>(j)) - expected) < 1e-12);
  }
}

TEST_CASE("position shift interpolates off-grid") {
  const double length = 1.0;
  const auto w = Wave::sample(length, 32, [&](double x) {
    return std::cos(kTau * 3 * x / length) + 0.5 * std::sin(kTau * 5 * x / length);
  });
  const double shift = 0.0123;  // not a multiple of L/32
  const auto s = wave::position_displace(w, shift);
  for (std::size_t j = 0; j < w.n_samples(); ++j) {
    const double x = w.x(j) - shift;
    const double expected = std::cos(kTau * 3 * x) + 0.5 * std::sin(kTau * 5 * x);
    CHECK(std::abs(s.values()(static_cast<Eigen::Index>(j)) - expected) < 1e-12);
  }
}

TEST_CASE("shift theorem holds coefficientwise") {
  std::mt19937_64 rng(9);
  const auto w = random_wave(rng, 1.7, 64);
  const double shift = 0.41;
  const auto before = wave::fourier_series(w);
  const auto after = wave::fourier_series(wave::position_displace(w, shift));
  for (int m = before.min_mode(); m <= before.max_mode(); ++m) {
    const cd expected = before(m) * std::polar(1.0, -kTau * m * shift / 1.7);
    CHECK(std::abs(after(m) - expected) < 1e-12);
  }
}

TEST_CASE("frequency shift creates and translates modes") {
  const double length = 1.0;
  const auto one = Wave::sample(length, 32, [](double) { return 1.0; });
  CHECK(max_diff(wave::frequency_displace(one, 0.0), one) == 0.0);
  const auto c = wave::fourier_series(wave::frequency_displace(one, kTau / length));
  CHECK(std::abs(c(1) - 1.0) < 1e-14);
  CHECK(std::abs(c(0)) < 1e-14);

  // sin(k0 x) with k0 = 4 modes, shifted by 2 modes
  const auto s = sine(length, 64, 4);
  const auto shifted = wave::frequency_displace(s, kTau * 2 / length);
  const auto cs = wave::fourier_series(shifted);
  CHECK(std::abs(cs(6) - 1.0 / cd(0, 2)) < 1e-14);
  CHECK(std::abs(cs(-2) + 1.0 / cd(0, 2)) < 1e-14);
  CHECK(std::abs(cs(4)) < 1e-14);
  CHECK(std::abs(cs(-4)) < 1e-14);
}

TEST_CASE("frequency shift leaves the value at the origin unchanged") {
  std::mt19937_64 rng(13);
  const auto w = random_wave(rng, 2.0, 64);
  const auto f = wave::frequency_displace(w, kTau * 5 / 2.0);
  CHECK(f.values()(0) == w.values()(0));
  const auto s = sine(2.0, 64, 3, 0.4);
  CHECK(wave::frequency_displace(s, -kTau * 7 / 2.0).values()(0) == s.values()(0));
}

TEST_CASE("frequency shift rejects non-commensurate and aliasing K") {
  const auto w = sine(1.0, 32);
  try {
    wave::frequency_displace(w, kTau * 2.3);
    FAIL("expected CommensurabilityError");
  } catch (const CommensurabilityError& e) {
    CHECK(e.nearest_valid_k() == doctest::Approx(kTau * 2));
  }
  CHECK_NOTHROW(wave::frequency_displace(w, kTau * 8));
  CHECK_THROWS_AS(wave::frequency_displace(w, kTau * 9), AliasingError);
}

TEST_CASE("displacement operators have exact inverses") {
  std::mt19937_64 rng(17);
  const auto w = random_wave(rng, 1.3, 128);
  CHECK(max_diff(wave::position_displace(wave::position_displace(w, 0.377), -0.377), w) < 1e-12);
  const double k = kTau * 11 / 1.3;
  CHECK(max_diff(wave::frequency_displace(wave::frequency_displace(w, k), -k), w) < 1e-12);
}

TEST_CASE("loop phase: X = 0 gives zero") {
  const auto w = sine(1.0, 64);
  const auto r = wave::loop_phase(w, 0.0, kTau * 3);
  CHECK(std::abs(r.phi) < 1e-12);
  CHECK(r.residual < 1e-12);
}

TEST_CASE("loop phase: K = 2 pi / L, X = L / 4 gives pi / 2") {
  const double length = 3.0;
  const auto w = sine(length, 64, 2);
  const auto r = wave::loop_phase(w, length / 4, kTau / length);
  CHECK(std::abs(r.phi - M_PI / 2) < 1e-10);
  CHECK(r.residual < 1e-10);

  // Direct per-sample check: g / f = e^{i pi/2} wherever f is not small.
  const auto g = wave::frequency_displace(
      wave::position_displace(
          wave::frequency_displace(wave::position_displace(w, length / 4), kTau / length),
          -length / 4),
      -kTau / length);
  for (Eigen::Index j = 0; j < 64; ++j) {
    if (std::abs(w.values()(j)) > 0.1) {
      CHECK(std::abs(g.values()(j) / w.values()(j) - cd(0, 1)) < 1e-10);
    }
  }
}

TEST_CASE("loop phase of a random multi-mode wave") {
  std::mt19937_64 rng(19);
  const double length = 1.0;
  const auto w = random_wave(rng, length, 128);
  const auto r = wave::loop_phase(w, 0.7 * length, kTau * 3 / length);
  CHECK(std::abs(phase_distance(r.phi, wrap_phase(kTau * 3 * 0.7))) < 1e-10);
  CHECK(r.residual < 1e-10);
}

TEST_CASE("loop phase is wave independent") {
  std::mt19937_64 rng(23);
  const double length = 2.0;
  const double x = 0.913;
  const double k = kTau * 5 / length;
  std::vector<double> phis;
  for (int t = 0; t < 12; ++t) phis.push_back(wave::loop_phase(random_wave(rng, length, 64), x, k).phi);
  const auto [lo, hi] = std::minmax_element(phis.begin(), phis.end());
  CHECK(*hi - *lo < 1e-10);
}

TEST_CASE("loop phase is additive in X") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto w = random_wave(rng, 1.0, 64);
  for (int t = 0; t < 10; ++t) {
    const double x1 = u(rng);
    const double x2 = u(rng);
    const double k = kTau * (t % 7 - 3);
    const double sum = wave::loop_phase(w, x1, k).phi + wave::loop_phase(w, x2, k).phi;
    CHECK(std::abs(phase_distance(wave::loop_phase(w, x1 + x2, k).phi, sum)) < 1e-10);
  }
}

TEST_CASE("loop phase rejects a zero wave") {
  const Wave zero(1.0, ComplexVector<double>::Zero(16));
  CHECK_THROWS_AS(wave::loop_phase(zero, 0.1, kTau), DegenerateInput);
}
