#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpdrc/model.hpp"
#include "dpdrc/privacy.hpp"

namespace dpdrc {

// Parsed top-level configuration. Sections: plant, cost, privacy, ambiguity,
// experiment. Unknown fields anywhere are errors (typo protection).
struct RunConfig {
  PlantModel plant;
  CostWeights weights;
  PrivacySpec privacy;
  double sigma2_ratio = 1.2;  // sigma2_hi / sigma2_lo
  double b_ratio = 1.2;       // b_hi / b_lo
  int trials = 10000;
  int grid_points = 12;  // true-noise sweep grid (Fig. 2 style)
  int tau_grid = 200;    // tau-curve / search grid size
  std::uint64_t master_seed = 42;
  std::vector<double> epsilon_grid;
  std::vector<double> delta_grid;

  std::string to_json() const;  // resolved config, for manifests
};

// Load from a JSON file; throws IoError (missing/unreadable) or
// ValidationError (schema violations, unknown keys).
RunConfig load_config(const std::string& path);

RunConfig parse_config(const std::string& json_text);

// The benchmark instance used throughout the docs and tests (two-state plant,
// N = 20, eps = ln 2, delta = 0.5, gamma = 0.5).
RunConfig builtin_benchmark_config();

// Apply "dotted.key=value" overrides (e.g. "privacy.epsilon=0.5"); keys must
// already exist in the config.
void apply_override(RunConfig& cfg, const std::string& key_value);

}  // namespace dpdrc
