#include "dcp/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "dcp/errors.hpp"
#include "dcp/io.hpp"

namespace dcp::config {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + ": not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("config: " + key + ": trailing junk in '" + text + "'");
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config: " + key + ": not a non-negative integer: '" + text + "'");
  }
  return v;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double(key, item));
  }
  return out;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key " + key);
    }
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_key_values(in);
}

interferometer::InterferometerConfig interferometer_from(const KeyValues& kv) {
  static const std::set<std::string> known = {
      "fiber_length",  "n_eff",      "base_rf_frequency", "rf_sweep",
      "tilt_spatial_frequency", "camera_pixels", "visibility", "intensity_offset",
      "noise_sigma",   "rng_seed"};
  for (const auto& [key, value] : kv) {
    if (!known.count(key)) throw ConfigError("config: unknown key " + key);
  }
  interferometer::InterferometerConfig c;
  const auto get = [&](const char* key, auto setter) {
    if (auto it = kv.find(key); it != kv.end()) setter(it->first, it->second);
  };
  get("fiber_length", [&](auto& k, auto& v) { c.fiber_length = to_double(k, v); });
  get("n_eff", [&](auto& k, auto& v) { c.n_eff = to_double(k, v); });
  get("base_rf_frequency", [&](auto& k, auto& v) { c.base_rf_frequency = to_double(k, v); });
  get("rf_sweep", [&](auto& k, auto& v) { c.rf_sweep = to_list(k, v); });
  get("tilt_spatial_frequency",
      [&](auto& k, auto& v) { c.tilt_spatial_frequency = to_double(k, v); });
  get("camera_pixels", [&](auto& k, auto& v) { c.camera_pixels = to_unsigned(k, v); });
  get("visibility", [&](auto& k, auto& v) { c.visibility = to_double(k, v); });
  get("intensity_offset", [&](auto& k, auto& v) { c.intensity_offset = to_double(k, v); });
  get("noise_sigma", [&](auto& k, auto& v) { c.noise_sigma = to_double(k, v); });
  get("rng_seed", [&](auto& k, auto& v) { c.rng_seed = to_unsigned(k, v); });
  c.validate();
  return c;
}

interferometer::InterferometerConfig load_interferometer(const std::string& path) {
  return interferometer_from(read_key_values(path));
}

void write_interferometer(std::ostream& out, const interferometer::InterferometerConfig& c) {
  using io::format_number;
  out << "fiber_length = " << format_number(c.fiber_length) << '\n'
      << "n_eff = " << format_number(c.n_eff) << '\n'
      << "base_rf_frequency = " << format_number(c.base_rf_frequency) << '\n'
      << "rf_sweep = ";
  for (std::size_t i = 0; i < c.rf_sweep.size(); ++i) {
    out << (i ? ", " : "") << format_number(c.rf_sweep[i]);
  }
  out << '\n'
      << "tilt_spatial_frequency = " << format_number(c.tilt_spatial_frequency) << '\n'
      << "camera_pixels = " << c.camera_pixels << '\n'
      << "visibility = " << format_number(c.visibility) << '\n'
      << "intensity_offset = " << format_number(c.intensity_offset) << '\n'
      << "noise_sigma = " << format_number(c.noise_sigma) << '\n'
      << "rng_seed = " << c.rng_seed << '\n';
}

}  // namespace dcp::config
