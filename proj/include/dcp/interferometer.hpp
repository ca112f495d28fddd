#ifndef DCP_INTERFEROMETER_HPP
#define DCP_INTERFEROMETER_HPP

// Simulator for the fiber-delay / AOM interferometer: the fiber displaces the
// beam in position by X = n_eff * L, the AOM shifts its spatial frequency by
// K = Omega_rf / c, and a tilt between the output beams turns the loop phase
// into a fringe shift on a line camera.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dcp::interferometer {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct InterferometerConfig {
  double fiber_length = 95.0;                 // m
  double n_eff = 1.4682;                      // effective index of the fiber
  double base_rf_frequency = 2.0 * 3.14159265358979323846 * 80e6;  // rad/s
  std::vector<double> rf_sweep;               // rad/s offsets from the base
  double tilt_spatial_frequency = 0.2;        // rad/pixel
  std::size_t camera_pixels = 1024;
  double visibility = 0.9;
  double intensity_offset = 1.0;
  double noise_sigma = 0.0;
  std::uint64_t rng_seed = 1;

  /// Optical path length X of the delay.
  double optical_delay() const { return n_eff * fiber_length; }

  /// Throws ConfigError if any field is out of range.
  void validate() const;
};

struct FringeImage {
  std::vector<double> pixels;
  double true_phase = 0.0;
};

struct FringeFit {
  double phase = 0.0;            // (-pi, pi]
  double amplitude = 0.0;
  double offset = 0.0;
  double rms_residual = 0.0;
  double phase_uncertainty = 0.0;  // 1-sigma, from the residual
  bool low_visibility = false;
};

struct SweepRow {
  double delta_rf = 0.0;        // rad/s
  double delta_k = 0.0;         // rad/m
  double fitted_phase = 0.0;    // rad, unwrapped, relative to delta_rf = 0
  double predicted_phase = 0.0; // rad
};

struct SweepResult {
  std::vector<SweepRow> rows;      // sorted by delta_rf
  double fitted_slope = 0.0;       // m
  double slope_residual = 0.0;     // rms of the linear fit, rad
  double slope_uncertainty = 0.0;  // propagated 1-sigma, m
  bool any_low_visibility = false;
};

/// Delta phi = Delta K * X with Delta K = delta_rf / c. Independent of the
/// base rf frequency and of any phase common to both arms.
double differential_phase(const InterferometerConfig& config, double delta_rf);

/// Spatial-frequency shift produced by an rf offset.
double spatial_frequency_shift(double delta_rf);

/// Phase of the fringes at absolute rf frequency base + delta_rf. Only its
/// variation with delta_rf is observable.
double absolute_fringe_phase(const InterferometerConfig& config, double delta_rf);

/// I(y) = offset (1 + V cos(k_t y + phase)) + gaussian noise.
/// `stream` selects an independent noise stream under the configured seed.
FringeImage render_fringes(const InterferometerConfig& config, double phase,
                           std::uint64_t stream = 0);

/// Linear least squares on {1, cos(k_t y), sin(k_t y)}.
FringeFit fit_fringe_phase(const FringeImage& image, double tilt_spatial_frequency);

/// Tilt frequency (rad/pixel) from the dominant peak of a calibration image.
double estimate_tilt_frequency(const FringeImage& image);

/// Largest phase step between adjacent sorted sweep points (including the
/// reference at delta_rf = 0). Unwrapping is unambiguous while this is < pi.
double max_phase_step(const InterferometerConfig& config);

/// Render, fit and unwrap every sweep point, then fit phase against Delta K.
SweepResult sweep_experiment(const InterferometerConfig& config);

/// Rendered image for every sweep point, in sorted order, with the same
/// noise streams sweep_experiment uses.
std::vector<FringeImage> sweep_images(const InterferometerConfig& config);

/// Pass band for |fitted_slope - X|: five propagated sigmas, floored at
/// 1e-9 relative.
double slope_tolerance(const InterferometerConfig& config, const SweepResult& result);

}  // namespace dcp::interferometer

#endif  // DCP_INTERFEROMETER_HPP
