#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcp/action.hpp"
#include "dcp/config.hpp"
#include "dcp/errors.hpp"
#include "dcp/fock.hpp"
#include "dcp/interferometer.hpp"
#include "dcp/io.hpp"
#include "dcp/wave.hpp"

namespace dcp::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using io::format_number;

namespace {

struct Globals {
  std::string out_dir = "dcp_out";
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string format = "csv";
};

struct QuantumArgs {
  std::string alpha = "1";
  std::string beta = "i";
  std::size_t dim = 64;
  std::size_t trials = 10;
};

struct WaveArgs {
  std::vector<double> shifts{0.25};
  std::vector<double> ks;
  std::vector<int> modes;
  double length = 1.0;
  std::size_t n_samples = 256;
  std::string wave = "sine";
};

struct ActionArgs {
  std::string path_file;
  double hbar = 1.0;
};

struct InterferometerArgs {
  std::string config_file;
  bool dump_fringes = false;
};

// Thrown for input/usage problems detected after CLI parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Run {
 public:
  Run(const Globals& g, std::string subcommand, std::ostream& out, std::ostream& err)
      : globals_(g), subcommand_(std::move(subcommand)), out_(out), err_(err) {
    fs::create_directories(globals_.out_dir);
    manifest_["subcommand"] = subcommand_;
    manifest_["tool_version"] = kVersion;
    manifest_["out_dir"] = globals_.out_dir;
    manifest_["format"] = globals_.format;
  }

  json& config() { return manifest_["config"]; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }
  const Globals& globals() const { return globals_; }

  /// Writes `content` to <out>/<name>.
  void write_file(const std::string& name, const std::string& content) {
    std::ofstream f(fs::path(globals_.out_dir) / name, std::ios::binary);
    if (!f) throw UsageError("cannot write " + (fs::path(globals_.out_dir) / name).string());
    f << content;
    manifest_["outputs"].push_back(name);
  }

  /// Writes the manifest; `args` is a canonical argument list that replays
  /// this run.
  void finish(std::uint64_t seed, std::vector<std::string> args, int exit_code) {
    manifest_["rng_seed"] = seed;
    manifest_["args"] = std::move(args);
    manifest_["exit_code"] = exit_code;
    std::ofstream f(fs::path(globals_.out_dir) / "manifest.json", std::ios::binary);
    f << manifest_.dump(2) << '\n';
  }

 private:
  Globals globals_;
  std::string subcommand_;
  std::ostream& out_;
  std::ostream& err_;
  json manifest_;
};

std::vector<std::string> global_args(const Globals& g, std::uint64_t seed) {
  return {"--seed", std::to_string(seed), "--format", g.format};
}

int quantum_loop(const Globals& g, const QuantumArgs& a, std::ostream& out, std::ostream& err) {
  const std::complex<double> alpha = io::parse_complex(a.alpha);
  const std::complex<double> beta = io::parse_complex(a.beta);
  // Guard first so the message names the minimum dimension.
  fock::check_truncation(alpha, a.dim, "quantum-loop");
  fock::check_truncation(beta, a.dim, "quantum-loop");
  fock::check_truncation(alpha + beta, a.dim, "quantum-loop");
  if (a.dim < 16) throw UsageError("quantum-loop: --dim must be >= 16");
  if (a.trials == 0) throw UsageError("quantum-loop: --trials must be >= 1");

  Run run(g, "quantum-loop", out, err);
  run.config() = {{"alpha", io::format_complex(alpha)},
                  {"beta", io::format_complex(beta)},
                  {"dim", a.dim},
                  {"trials", a.trials}};

  const double analytic = wrap_phase(2.0 * std::imag(std::conj(alpha) * beta));
  std::mt19937_64 rng(g.seed);
  const std::size_t support = std::max<std::size_t>(2, a.dim / 4);

  std::ostringstream csv;
  csv << "trial,phase_rad,analytic_rad,discrepancy_rad\n";
  double worst = 0.0;
  for (std::size_t t = 0; t < a.trials; ++t) {
    const auto state = fock::random_state<double>(a.dim, support, rng);
    const double phase = fock::loop_phase(alpha, beta, state);
    const double disc = std::abs(phase_distance(phase, analytic));
    worst = std::max(worst, disc);
    csv << t << ',' << format_number(phase) << ',' << format_number(analytic) << ','
        << format_number(disc) << '\n';
  }
  run.write_file("quantum_loop.csv", csv.str());
  out << csv.str();

  const int code = worst > 1e-6 ? kContractViolated : kOk;
  if (code != kOk) err << "quantum-loop: discrepancy " << worst << " exceeds 1e-6\n";
  auto args = global_args(g, g.seed);
  args.insert(args.end(), {"quantum-loop", "--alpha", io::format_complex(alpha), "--beta",
                           io::format_complex(beta), "--dim", std::to_string(a.dim), "--trials",
                           std::to_string(a.trials)});
  run.finish(g.seed, std::move(args), code);
  return code;
}

wave::SampledWave<double> make_wave(const WaveArgs& a, std::uint64_t seed) {
  const double length = a.length;
  const std::size_t n = a.n_samples;
  if (a.wave == "sine") {
    return wave::SampledWave<double>::sample(
        length, n, [&](double x) { return std::sin(kTwoPi<double> * x / length); });
  }
  if (a.wave == "constant") {
    return wave::SampledWave<double>::sample(length, n, [](double) { return 1.0; });
  }
  if (a.wave.rfind("mode:", 0) == 0) {
    const int m = std::stoi(a.wave.substr(5));
    return wave::SampledWave<double>::sample(length, n, [&](double x) {
      return std::polar(1.0, kTwoPi<double> * m * x / length);
    });
  }
  if (a.wave == "random") {
    // Band-limited to |n| < N/4 so any admissible frequency shift stays
    // inside the sampled band.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    wave::FourierCoefficients<double> c(length, ComplexVector<double>::Zero(
                                                    static_cast<Eigen::Index>(n)));
    const int band = static_cast<int>(n / 4);
    for (int mode = -band + 1; mode < band; ++mode) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      c(mode) = {re, im};
    }
    return wave::inverse_fourier_series(c);
  }
  throw UsageError("wave-loop: unknown --wave '" + a.wave +
                   "' (expected sine, constant, random or mode:<n>)");
}

int wave_loop(const Globals& g, const WaveArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<double> ks = a.ks;
  for (int m : a.modes) ks.push_back(kTwoPi<double> * m / a.length);
  if (ks.empty()) ks.push_back(kTwoPi<double> / a.length);
  const auto w = make_wave(a, g.seed);

  Run run(g, "wave-loop", out, err);
  run.config() = {{"X", a.shifts}, {"K", ks}, {"L", a.length},
                  {"n_samples", a.n_samples}, {"wave", a.wave}};

  std::ostringstream csv;
  csv << "X,K,phi,residual\n";
  bool ok = true;
  for (double x : a.shifts) {
    for (double k : ks) {
      const auto r = wave::loop_phase(w, x, k);
      const double expected = wrap_phase(x * k);
      if (std::abs(phase_distance(r.phi, expected)) > 1e-10 || r.residual > 1e-10) {
        ok = false;
        err << "wave-loop: X=" << x << " K=" << k << " phi=" << r.phi << " expected "
            << expected << " residual " << r.residual << '\n';
      }
      csv << format_number(x) << ',' << format_number(k) << ',' << format_number(r.phi) << ','
          << format_number(r.residual) << '\n';
    }
  }
  run.write_file("wave_loop.csv", csv.str());
  std::ostringstream wave_csv;
  io::write_wave_csv(wave_csv, w);
  run.write_file("wave.csv", wave_csv.str());
  out << csv.str();

  const int code = ok ? kOk : kContractViolated;
  auto args = global_args(g, g.seed);
  args.push_back("wave-loop");
  for (double x : a.shifts) args.insert(args.end(), {"--X", format_number(x)});
  for (double k : ks) args.insert(args.end(), {"--K", format_number(k)});
  args.insert(args.end(), {"--L", format_number(a.length), "--n-samples",
                           std::to_string(a.n_samples), "--wave", a.wave});
  run.finish(g.seed, std::move(args), code);
  return code;
}

int action_loop(const Globals& g, const ActionArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.path_file);
  if (!in) throw UsageError("action-loop: cannot open " + a.path_file);
  const auto path = io::read_path_csv(in);
  if (!(a.hbar > 0)) throw UsageError("action-loop: --hbar must be positive");

  const auto actions = action::segment_actions(path);
  const double total = action::loop_action(path);
  const double area = action::shoelace_area(path);
  const double phase = action::quantum_phase_of_loop(path, a.hbar);

  Run run(g, "action-loop", out, err);
  std::ostringstream path_csv;
  io::write_path_csv(path_csv, path);
  run.config() = {{"path_file", a.path_file}, {"hbar", a.hbar}, {"path_csv", path_csv.str()}};

  std::ostringstream csv;
  csv << "segment,x_start,p_start,x_end,p_end,duration,action\n";
  double scale = std::abs(area);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto [s, e] = path.segment(i);
    csv << i << ',' << format_number(s.x) << ',' << format_number(s.p) << ',' << format_number(e.x)
        << ',' << format_number(e.p) << ',' << format_number(path.durations()[i]) << ','
        << format_number(actions[i]) << '\n';
    scale = std::max(scale, std::abs(actions[i]));
  }
  std::ostringstream summary;
  summary << "total_action,shoelace_area,phase_rad\n"
          << format_number(total) << ',' << format_number(area) << ',' << format_number(phase)
          << '\n';
  run.write_file("action_loop.csv", csv.str());
  run.write_file("action_summary.csv", summary.str());
  out << csv.str() << summary.str();

  const double gap = std::abs(total - area);
  const int code = gap > 1e-9 * std::max(scale, std::numeric_limits<double>::min())
                       ? kContractViolated
                       : kOk;
  if (code != kOk) err << "action-loop: |total - area| = " << gap << " exceeds 1e-9 relative\n";
  auto args = global_args(g, g.seed);
  args.insert(args.end(), {"action-loop", a.path_file, "--hbar", format_number(a.hbar)});
  run.finish(g.seed, std::move(args), code);
  return code;
}

int interferometer_run(const Globals& g, const InterferometerArgs& a, std::ostream& out,
                       std::ostream& err) {
  auto config = config::load_interferometer(a.config_file);
  if (g.seed_given) config.rng_seed = g.seed;
  if (config.rf_sweep.size() < 2) {
    throw UsageError("interferometer: rf_sweep needs at least 2 offsets");
  }
  if (interferometer::max_phase_step(config) >= kPi<double>) {
    err << "warning: sweep step gives a phase step of "
        << interferometer::max_phase_step(config)
        << " rad (>= pi); unwrapping may pick the wrong branch\n";
  }

  Run run(g, "interferometer", out, err);
  std::ostringstream cfg;
  config::write_interferometer(cfg, config);
  run.config() = {{"config_file", a.config_file}, {"resolved", cfg.str()}};

  const auto result = interferometer::sweep_experiment(config);
  std::ostringstream csv;
  io::write_sweep_csv(csv, result);
  run.write_file("sweep.csv", csv.str());
  out << csv.str();

  if (a.dump_fringes) {
    const auto images = interferometer::sweep_images(config);
    for (std::size_t i = 0; i < images.size(); ++i) {
      std::ostringstream f;
      io::write_fringes_csv(f, images[i]);
      run.write_file("fringes_" + std::to_string(i) + ".csv", f.str());
    }
  }
  if (g.format == "csv+svg") {
    std::ostringstream svg;
    char label[64];
    std::snprintf(label, sizeof label, "L = %g m", config.fiber_length);
    io::write_sweep_svg(svg, {{label, config.optical_delay(), result}});
    run.write_file("sweep.svg", svg.str());
  }

  const double expected = config.optical_delay();
  const double tol = interferometer::slope_tolerance(config, result);
  const double gap = std::abs(result.fitted_slope - expected);
  err << "fitted slope " << format_number(result.fitted_slope) << " m, expected n_eff*L = "
      << format_number(expected) << " m, tolerance " << format_number(tol) << " m\n";
  if (result.any_low_visibility) err << "warning: low fringe visibility in at least one image\n";
  const int code = gap > tol ? kContractViolated : kOk;
  if (code != kOk) err << "interferometer: slope deviates beyond tolerance\n";

  // Replays from the resolved config written next to the outputs.
  run.write_file("config.resolved", cfg.str());
  auto args = global_args(g, config.rng_seed);
  args.insert(args.end(), {"interferometer",
                           (fs::path(g.out_dir) / "config.resolved").string()});
  if (a.dump_fringes) args.push_back("--dump-fringes");
  run.finish(config.rng_seed, std::move(args), code);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Displacement composition phase laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "csv+svg"}))
      ->capture_default_str();

  QuantumArgs qa;
  auto* quantum = app.add_subcommand("quantum-loop", "Closed-loop phase in truncated Fock space");
  quantum->add_option("--alpha", qa.alpha, "First displacement (a+bi)")->capture_default_str();
  quantum->add_option("--beta", qa.beta, "Second displacement (a+bi)")->capture_default_str();
  quantum->add_option("--dim", qa.dim, "Fock-space truncation")->capture_default_str();
  quantum->add_option("--trials", qa.trials, "Number of random states")->capture_default_str();

  WaveArgs wa;
  auto* wave_cmd = app.add_subcommand("wave-loop", "Closed-loop phase of a sampled periodic wave");
  wave_cmd->add_option("--X", wa.shifts, "Position displacement(s), m")->capture_default_str();
  wave_cmd->add_option("--K", wa.ks, "Spatial-frequency displacement(s), rad/m");
  wave_cmd->add_option("--mode", wa.modes, "Frequency displacement(s) as mode numbers m");
  wave_cmd->add_option("--L", wa.length, "Period length, m")->capture_default_str();
  wave_cmd->add_option("--n-samples", wa.n_samples, "Grid size (power of two)")
      ->capture_default_str();
  wave_cmd->add_option("--wave", wa.wave, "sine | constant | random | mode:<n>")
      ->capture_default_str();

  ActionArgs aa;
  auto* action_cmd = app.add_subcommand("action-loop", "Action around a polygonal phase-space loop");
  action_cmd->add_option("path_file", aa.path_file, "CSV with rows x,p,duration")->required();
  action_cmd->add_option("--hbar", aa.hbar, "Reduced Planck constant")->capture_default_str();

  InterferometerArgs ia;
  auto* interf = app.add_subcommand("interferometer", "Simulated fiber/AOM slope measurement");
  interf->add_option("config_file", ia.config_file, "key = value config file")->required();
  interf->add_flag("--dump-fringes", ia.dump_fringes, "Write fringes_<i>.csv per sweep point");

  std::string manifest_file;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest_file, "manifest.json")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*quantum) return quantum_loop(g, qa, out, err);
    if (*wave_cmd) return wave_loop(g, wa, out, err);
    if (*action_cmd) return action_loop(g, aa, out, err);
    if (*interf) return interferometer_run(g, ia, out, err);
    if (*replay) {
      std::ifstream in(manifest_file);
      if (!in) throw UsageError("replay: cannot open " + manifest_file);
      const json m = json::parse(in);
      std::vector<std::string> replay_args = {"--out",
                                              app.count("--out") ? g.out_dir
                                                                 : m.at("out_dir").get<std::string>()};
      for (const auto& s : m.at("args")) replay_args.push_back(s.get<std::string>());
      return run(replay_args, out, err);
    }
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << " (minimum dim " << e.required_dim() << ")\n";
    return kUsage;
  } catch (const CommensurabilityError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const TruncationCorruption& e) {
    err << "error: " << e.what() << '\n';
    return kContractViolated;
  } catch (const dcp::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: malformed manifest: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dcp::cli
