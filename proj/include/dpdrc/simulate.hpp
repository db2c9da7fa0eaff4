#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpdrc/privacy.hpp"
#include "dpdrc/synthesis.hpp"

namespace dpdrc {

// One Monte-Carlo campaign: every (controller, true distribution) pair runs
// `trials` independent rollouts. Per-trial seeds derive from
// hash(master_seed, controller id, distribution id, trial index), so results
// are independent of execution order and worker count.
struct ExperimentSpec {
  PlantModel plant;
  CostWeights weights;
  std::vector<Controller> controllers;
  std::vector<std::string> controller_ids;
  std::vector<NoiseDistribution> true_distributions;
  int trials = 1;
  std::uint64_t master_seed = 0;
  int workers = 0;  // 0 = auto
};

struct CostStats {
  std::string controller_id;
  std::string distribution_id;  // "gaussian" | "laplace"
  double parameter;             // sigma2 or b
  double mean;
  double p95;  // nearest-rank: ceil(0.95 n)-th order statistic
  double worst;
  double min;
  int trials;
  std::uint64_t seed;
};

// Closed-loop rollout under the true noise distribution; returns the cost J.
// Deterministic function of (plant, controller, dist, trial_seed).
double run_trial(const PlantModel& plant, const CostWeights& weights, const Controller& ctrl,
                 const NoiseDistribution& dist, std::uint64_t trial_seed);

std::vector<CostStats> monte_carlo(const ExperimentSpec& spec);

// Mean costs of the re-synthesized DR controller while the privacy budget
// varies; each grid point recalibrates the bounds, recomputes eta, and
// re-runs synthesis. upper_ratio fixes sigma2_hi/sigma2_lo = b_hi/b_lo.
struct SweepPoint {
  std::string mechanism;
  double epsilon;
  double delta;
  double mean_cost;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  int skipped = 0;  // grid points whose calibration hypotheses fail
};

SweepResult privacy_sweep(const PlantModel& plant, const CostWeights& weights, double gamma,
                          const std::vector<double>& epsilon_grid,
                          const std::vector<double>& delta_grid, double upper_ratio, int trials,
                          std::uint64_t master_seed, int workers = 0, int tau_grid_size = 96);

}  // namespace dpdrc
