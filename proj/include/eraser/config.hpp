#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "eraser/analytic.hpp"
#include "eraser/montecarlo.hpp"
#include "eraser/source.hpp"

// Flat key-value run configuration. The file format is strict INI:
// [section] headers, key = value lines, '#' or ';' comments. Unknown
// sections/keys and out-of-range values are rejected with messages anchored
// to the offending line. Angles are degrees at this boundary and radians
// everywhere inside.

namespace eraser {

enum class OutputFormat { csv, json };

struct RunConfig {
  // [source]
  SourceConfig source;

  // [settings] (degrees / seconds at the file boundary)
  double zeta_deg = 0.0;
  double eta_deg = 90.0;
  double theta_deg = 67.5;
  double xi_deg = 22.5;
  double tau_a = 0.0;
  double tau_b = 0.0;
  double i0 = 1.0;

  // [mc]
  std::uint64_t n_events = 1'000'000;
  McMode mc_mode = McMode::quantum_gated;

  // [output]
  std::string output_dir = "out";
  OutputFormat output_format = OutputFormat::json;
  bool emit_svg = false;

  EraserSettings settings() const;
  McConfig mc_config() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parse failure; what() carries "origin:line: message".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses config text. `origin` names the source (file path) in errors.
RunConfig parse_run_config(const std::string& text, const std::string& origin);

RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical serialization; parse_run_config(serialize(c)) == c.
std::string serialize(const RunConfig& cfg);

}  // namespace eraser
