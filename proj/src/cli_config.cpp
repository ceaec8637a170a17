#include "openboson/cli_config.hpp"

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <set>

namespace openboson {

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec spec;
  std::size_t start = 0;
  std::vector<std::string> parts;
  while (true) {
    const std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  if (parts.size() != 4) {
    throw std::invalid_argument("sweep must look like name:min:max:count");
  }
  static const std::set<std::string> known = {
      "omega_s", "delta",  "gamma_e", "gamma_c", "temp_e",
      "temp_c",  "mass",   "n0",      "t_end"};
  if (known.find(parts[0]) == known.end()) {
    throw std::invalid_argument("unknown sweep parameter '" + parts[0] + "'");
  }
  spec.name = parts[0];
  try {
    std::size_t used = 0;
    spec.min = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    spec.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    spec.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::exception&) {
    throw std::invalid_argument("sweep bounds must be numeric: '" + text + "'");
  }
  if (!std::isfinite(spec.min) || !std::isfinite(spec.max) ||
      !(spec.min < spec.max)) {
    throw std::invalid_argument("sweep requires min < max");
  }
  if (spec.count < 2) {
    throw std::invalid_argument("sweep count must be >= 2");
  }
  return spec;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid(spec.count);
  const double step = (spec.max - spec.min) / (spec.count - 1);
  for (int i = 0; i < spec.count; ++i) {
    grid[i] = spec.min + i * step;
  }
  grid.back() = spec.max;
  return grid;
}

namespace {

using nlohmann::json;

double as_number(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw std::invalid_argument("config key '" + key + "' must be a number");
  }
  return value.get<double>();
}

int as_int(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw std::invalid_argument("config key '" + key + "' must be an integer");
  }
  return value.get<int>();
}

std::vector<double> as_number_list(const json& value, const std::string& key) {
  if (!value.is_array()) {
    throw std::invalid_argument("config key '" + key +
                                "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    out.push_back(as_number(item, key));
  }
  return out;
}

}  // namespace

void apply_json_config(const std::string& json_text, RunConfig& config) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                err.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("config must be a flat JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "omega_s") {
      config.params.omega_s = as_number(value, key);
    } else if (key == "delta") {
      config.params.delta = as_number(value, key);
    } else if (key == "gamma_e") {
      config.params.gamma_e = as_number(value, key);
    } else if (key == "gamma_c") {
      config.params.gamma_c = as_number(value, key);
    } else if (key == "temp_e") {
      config.params.temp_e = as_number(value, key);
    } else if (key == "temp_c") {
      config.params.temp_c = as_number(value, key);
    } else if (key == "mass") {
      config.params.mass = as_number(value, key);
    } else if (key == "hbar") {
      config.params.hbar = as_number(value, key);
    } else if (key == "k_b") {
      config.params.k_b = as_number(value, key);
    } else if (key == "temp_e_list") {
      config.temp_e_list = as_number_list(value, key);
    } else if (key == "n0") {
      config.n0 = as_number(value, key);
    } else if (key == "t_end") {
      config.t_end = as_number(value, key);
    } else if (key == "dt") {
      config.dt = as_number(value, key);
    } else if (key == "dim") {
      config.dim = as_int(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw std::invalid_argument(
            "config key 'seed' must be a non-negative integer");
      }
      config.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      if (!value.is_string()) {
        throw std::invalid_argument("config key 'out' must be a string");
      }
      config.out = value.get<std::string>();
    } else if (key == "sweep") {
      if (!value.is_string()) {
        throw std::invalid_argument(
            "config key 'sweep' must be a name:min:max:count string");
      }
      config.sweep = parse_sweep(value.get<std::string>());
    } else if (key == "x0") {
      config.x0 = as_number(value, key);
    } else if (key == "sigma0_sq") {
      config.sigma0_sq = as_number(value, key);
    } else if (key == "points") {
      config.points = as_int(value, key);
    } else if (key == "times") {
      config.snapshot_times = as_number_list(value, key);
    } else if (key == "target_fraction") {
      config.target_fraction = as_number(value, key);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

}  // namespace openboson
