#ifndef DCP_CONFIG_HPP
#define DCP_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "dcp/interferometer.hpp"

namespace dcp::config {

/// Flat `key = value` file. Blank lines and `#` comments are ignored; a key
/// may appear only once.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::string& path);

/// Builds a validated config; keys must match the field names. Missing keys
/// keep their defaults, unknown keys are rejected.
interferometer::InterferometerConfig interferometer_from(const KeyValues& kv);
interferometer::InterferometerConfig load_interferometer(const std::string& path);

/// Writes every field in the same format, 17 significant digits.
void write_interferometer(std::ostream& out, const interferometer::InterferometerConfig& c);

}  // namespace dcp::config

#endif  // DCP_CONFIG_HPP
