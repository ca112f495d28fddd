#include "dcp/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "dcp/common.hpp"
#include "dcp/errors.hpp"

namespace dcp::interferometer {

namespace {

std::mt19937_64 noise_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Sweep point i (in config order) draws from stream i + 1; the reference
// image at delta_rf = 0 uses stream 0.
constexpr std::uint64_t kReferenceStream = 0;

std::vector<std::size_t> sorted_order(const std::vector<double>& sweep) {
  std::vector<std::size_t> idx(sweep.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return sweep[a] < sweep[b]; });
  return idx;
}

// Single-point phase noise expected from the configured pixel noise.
double expected_phase_sigma(const InterferometerConfig& c) {
  const double amp = c.intensity_offset * c.visibility;
  return c.noise_sigma / (amp * std::sqrt(static_cast<double>(c.camera_pixels) / 2.0));
}

}  // namespace

void InterferometerConfig::validate() const {
  const auto fail = [](const std::string& m) { throw ConfigError("interferometer config: " + m); };
  if (!(fiber_length > 0) || !std::isfinite(fiber_length)) fail("fiber_length must be positive");
  if (!(n_eff > 0) || !std::isfinite(n_eff)) fail("n_eff must be positive");
  if (!(base_rf_frequency > 0) || !std::isfinite(base_rf_frequency)) {
    fail("base_rf_frequency must be positive");
  }
  for (double d : rf_sweep) {
    if (!std::isfinite(d)) fail("rf_sweep offsets must be finite");
  }
  if (!(tilt_spatial_frequency > 0) || !std::isfinite(tilt_spatial_frequency)) {
    fail("tilt_spatial_frequency must be positive");
  }
  if (camera_pixels < 32) fail("camera_pixels must be >= 32");
  if (!(visibility > 0 && visibility <= 1)) fail("visibility must lie in (0, 1]");
  if (!(intensity_offset > 0) || !std::isfinite(intensity_offset)) {
    fail("intensity_offset must be positive");
  }
  if (!(noise_sigma >= 0) || !std::isfinite(noise_sigma)) fail("noise_sigma must be >= 0");
}

double spatial_frequency_shift(double delta_rf) { return delta_rf / kSpeedOfLight; }

double differential_phase(const InterferometerConfig& config, double delta_rf) {
  return spatial_frequency_shift(delta_rf) * config.optical_delay();
}

double absolute_fringe_phase(const InterferometerConfig& config, double delta_rf) {
  const double base = wrap_phase(config.base_rf_frequency / kSpeedOfLight * config.optical_delay());
  return base + differential_phase(config, delta_rf);
}

FringeImage render_fringes(const InterferometerConfig& config, double phase, std::uint64_t stream) {
  FringeImage img;
  img.true_phase = phase;
  img.pixels.resize(config.camera_pixels);
  const double kt = config.tilt_spatial_frequency;
  for (std::size_t y = 0; y < config.camera_pixels; ++y) {
    img.pixels[y] = config.intensity_offset *
                    (1.0 + config.visibility * std::cos(kt * static_cast<double>(y) + phase));
  }
  if (config.noise_sigma > 0) {
    auto rng = noise_engine(config.rng_seed, stream);
    std::normal_distribution<double> gauss(0.0, config.noise_sigma);
    for (double& v : img.pixels) v += gauss(rng);
  }
  return img;
}

FringeFit fit_fringe_phase(const FringeImage& image, double kt) {
  if (!(kt > 0) || !std::isfinite(kt)) {
    throw InvalidParameter("fit_fringe_phase: tilt spatial frequency must be positive");
  }
  const auto n = static_cast<Eigen::Index>(image.pixels.size());
  if (n < 4) throw InvalidParameter("fit_fringe_phase: need at least 4 pixels");

  Eigen::MatrixXd basis(n, 3);
  for (Eigen::Index y = 0; y < n; ++y) {
    const double arg = kt * static_cast<double>(y);
    basis(y, 0) = 1.0;
    basis(y, 1) = std::cos(arg);
    basis(y, 2) = std::sin(arg);
  }
  const Eigen::Map<const Eigen::VectorXd> intensity(image.pixels.data(), n);
  const Eigen::Vector3d coef = basis.colPivHouseholderQr().solve(intensity);

  FringeFit fit;
  fit.offset = coef(0);
  // A cos(k y + phi) = A cos(phi) cos(k y) - A sin(phi) sin(k y)
  fit.amplitude = std::hypot(coef(1), coef(2));
  fit.phase = wrap_phase(std::atan2(-coef(2), coef(1)));
  fit.rms_residual = std::sqrt((basis * coef - intensity).squaredNorm() / static_cast<double>(n));

  const double dof = static_cast<double>(n) - 3.0;
  const double sigma_pixel = fit.rms_residual * std::sqrt(static_cast<double>(n) / dof);
  const double sigma_amp = sigma_pixel * std::sqrt(2.0 / static_cast<double>(n));
  fit.phase_uncertainty = fit.amplitude > 0 ? sigma_amp / fit.amplitude
                                            : std::numeric_limits<double>::infinity();
  fit.low_visibility =
      fit.amplitude <= 5.0 * sigma_amp || fit.amplitude <= 1e-9 * std::abs(fit.offset);
  return fit;
}

double estimate_tilt_frequency(const FringeImage& image) {
  const std::size_t n = image.pixels.size();
  if (n < 8) throw InvalidParameter("estimate_tilt_frequency: need at least 8 pixels");
  const double mean = std::accumulate(image.pixels.begin(), image.pixels.end(), 0.0) /
                      static_cast<double>(n);

  const auto power = [&](double k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t y = 0; y < n; ++y) {
      acc += (image.pixels[y] - mean) * std::polar(1.0, -k * static_cast<double>(y));
    }
    return std::norm(acc);
  };

  // Coarse periodogram on a grid 8x finer than the DFT bins.
  const std::size_t grid = 8 * n;
  const double step = kPi<double> / static_cast<double>(grid);
  double best_k = step;
  double best_p = -1.0;
  for (std::size_t j = 1; j < grid; ++j) {
    const double k = step * static_cast<double>(j);
    const double p = power(k);
    if (p > best_p) {
      best_p = p;
      best_k = k;
    }
  }

  // Refine by minimizing the sinusoid-fit residual (golden section).
  const auto residual = [&](double k) { return fit_fringe_phase(image, k).rms_residual; };
  double lo = std::max(best_k - 2 * step, step / 4);
  double hi = std::min(best_k + 2 * step, kPi<double> - step / 4);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = residual(a);
  double fb = residual(b);
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * best_k; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = residual(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = residual(b);
    }
  }
  return 0.5 * (lo + hi);
}

double max_phase_step(const InterferometerConfig& config) {
  std::vector<double> deltas = config.rf_sweep;
  deltas.push_back(0.0);
  std::sort(deltas.begin(), deltas.end());
  double worst = 0.0;
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    worst = std::max(worst, std::abs(differential_phase(config, deltas[i]) -
                                     differential_phase(config, deltas[i - 1])));
  }
  return worst;
}

std::vector<FringeImage> sweep_images(const InterferometerConfig& config) {
  config.validate();
  std::vector<FringeImage> out;
  for (std::size_t i : sorted_order(config.rf_sweep)) {
    out.push_back(
        render_fringes(config, absolute_fringe_phase(config, config.rf_sweep[i]), i + 1));
  }
  return out;
}

SweepResult sweep_experiment(const InterferometerConfig& config) {
  config.validate();
  {
    std::vector<double> distinct = config.rf_sweep;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) {
      throw InsufficientSweep("sweep_experiment: rf_sweep needs at least 2 distinct offsets");
    }
  }

  const double kt = config.tilt_spatial_frequency;
  const FringeFit reference =
      fit_fringe_phase(render_fringes(config, absolute_fringe_phase(config, 0.0), kReferenceStream), kt);

  SweepResult result;
  result.any_low_visibility = reference.low_visibility;
  std::vector<double> wrapped;
  for (std::size_t i : sorted_order(config.rf_sweep)) {
    const double delta_rf = config.rf_sweep[i];
    const FringeImage img =
        render_fringes(config, absolute_fringe_phase(config, delta_rf), i + 1);
    const FringeFit fit = fit_fringe_phase(img, kt);
    result.any_low_visibility = result.any_low_visibility || fit.low_visibility;

    SweepRow row;
    row.delta_rf = delta_rf;
    row.delta_k = spatial_frequency_shift(delta_rf);
    row.predicted_phase = differential_phase(config, delta_rf);
    result.rows.push_back(row);
    wrapped.push_back(wrap_phase(fit.phase - reference.phase));
  }

  // Continue from the reference (delta_rf = 0, phase 0) outward in both
  // directions, taking the nearest 2 pi branch at every step.
  const auto first_nonneg = static_cast<std::ptrdiff_t>(
      std::lower_bound(result.rows.begin(), result.rows.end(), 0.0,
                       [](const SweepRow& r, double v) { return r.delta_rf < v; }) -
      result.rows.begin());
  double prev = 0.0;
  for (std::ptrdiff_t i = first_nonneg; i < static_cast<std::ptrdiff_t>(wrapped.size()); ++i) {
    prev += wrap_phase(wrapped[static_cast<std::size_t>(i)] - prev);
    result.rows[static_cast<std::size_t>(i)].fitted_phase = prev;
  }
  prev = 0.0;
  for (std::ptrdiff_t i = first_nonneg - 1; i >= 0; --i) {
    prev += wrap_phase(wrapped[static_cast<std::size_t>(i)] - prev);
    result.rows[static_cast<std::size_t>(i)].fitted_phase = prev;
  }

  // Least-squares line fitted_phase = slope * delta_k + intercept.
  const auto n = static_cast<double>(result.rows.size());
  double mean_k = 0.0;
  double mean_phi = 0.0;
  for (const auto& r : result.rows) {
    mean_k += r.delta_k;
    mean_phi += r.fitted_phase;
  }
  mean_k /= n;
  mean_phi /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& r : result.rows) {
    sxx += (r.delta_k - mean_k) * (r.delta_k - mean_k);
    sxy += (r.delta_k - mean_k) * (r.fitted_phase - mean_phi);
  }
  result.fitted_slope = sxy / sxx;
  const double intercept = mean_phi - result.fitted_slope * mean_k;
  double ss = 0.0;
  for (const auto& r : result.rows) {
    const double e = r.fitted_phase - (result.fitted_slope * r.delta_k + intercept);
    ss += e * e;
  }
  result.slope_residual = std::sqrt(ss / n);
  result.slope_uncertainty = expected_phase_sigma(config) / std::sqrt(sxx);
  return result;
}

double slope_tolerance(const InterferometerConfig& config, const SweepResult& result) {
  return std::max(5.0 * result.slope_uncertainty, 1e-9 * config.optical_delay());
}

}  // namespace dcp::interferometer
