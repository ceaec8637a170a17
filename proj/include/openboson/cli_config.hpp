#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "openboson/params.hpp"

namespace openboson {

// Parsed form of "name:min:max:count".
struct SweepSpec {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

// Throws std::invalid_argument on malformed text, unknown parameter names,
// min >= max, or count < 2.
SweepSpec parse_sweep(const std::string& text);

// Inclusive linear grid with spec.count points.
std::vector<double> sweep_grid(const SweepSpec& spec);

// Everything a subcommand run needs; defaults here, then the config file,
// then command-line flags, in that order of precedence.
struct RunConfig {
  SystemParams params;
  std::vector<double> temp_e_list;  // extra emitter curves for the figures
  double n0 = 0.0;
  double t_end = 5.0;
  double dt = 0.0;  // 0: pick automatically
  int dim = 0;      // 0: pick automatically
  std::uint64_t seed = 12345;
  std::string out;
  std::optional<SweepSpec> sweep;
  double x0 = 1.0;
  double sigma0_sq = 0.0;  // 0: 1e-3 * n_s
  int points = 1025;
  std::vector<double> snapshot_times;
  double target_fraction = 0.5;
};

// Overlays a flat JSON object onto config. Key names match the long command
// line flags (snake_case). Unknown keys and wrong value types are rejected
// with std::invalid_argument naming the key.
void apply_json_config(const std::string& json_text, RunConfig& config);

}  // namespace openboson
