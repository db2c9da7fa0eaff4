#include "dpdrc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <thread>

#include "dpdrc/ambiguity.hpp"
#include "dpdrc/errors.hpp"
#include "dpdrc/rng.hpp"

namespace dpdrc {

namespace {

// Draw order is fixed: x(0), stacked v(0..N), then w(k) step by step.
Vector sample_mvn(Rng& rng, const Vector& mean, const Matrix& sqrt_cov) {
  Vector z(mean.size());
  for (int i = 0; i < z.size(); ++i) z(i) = rng.gaussian();
  return mean + sqrt_cov * z;
}

}  // namespace

double run_trial(const PlantModel& plant, const CostWeights& weights, const Controller& ctrl,
                 const NoiseDistribution& dist, std::uint64_t trial_seed) {
  if (ctrl.horizon() != plant.N)
    throw DimensionError("run_trial: controller horizon does not match plant");
  if (dist.L != plant.stacked_dim())
    throw DimensionError("run_trial: stacked noise dimension mismatch");
  const int N = plant.N;
  const int p = plant.p();

  Rng rng(trial_seed);
  const Matrix sqrt_ini = psd_sqrt(plant.Sigma_ini);
  const Matrix sqrt_w = psd_sqrt(plant.Sigma_w);
  Vector x = sample_mvn(rng, plant.x_ini, sqrt_ini);
  Vector v(dist.L);
  if (dist.is_gaussian()) {
    const double sd = std::sqrt(dist.parameter());
    for (int i = 0; i < dist.L; ++i) v(i) = sd * rng.gaussian();
  } else {
    for (int i = 0; i < dist.L; ++i) v(i) = rng.laplace(dist.parameter());
  }

  Vector xhat = ctrl.xhat0;
  double cost = 0.0;
  for (int k = 0; k < N; ++k) {
    const Vector y_tilde = plant.C * x + v.segment(k * p, p);
    auto [u, next_xhat] = control_step(ctrl, k, y_tilde, xhat);
    cost += 0.5 * (x.dot(weights.Q * x) + u.dot(weights.R * u));
    xhat = next_xhat;
    const Vector w = sample_mvn(rng, Vector::Zero(plant.n()), sqrt_w);
    x = plant.A * x + plant.B * u + w;
  }
  cost += 0.5 * x.dot(weights.Q_N * x);
  return cost;
}

namespace {

std::uint64_t mechanism_key(const NoiseDistribution& d) { return d.is_gaussian() ? 1 : 2; }

// Parameters are hashed through their IEEE bits so distinct grid points get
// distinct streams.
std::uint64_t param_key(double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  return bits;
}

void run_block(const ExperimentSpec& spec, const Controller& ctrl,
               const NoiseDistribution& dist, std::uint64_t pair_seed, int lo, int hi,
               std::vector<double>& costs) {
  for (int t = lo; t < hi; ++t) {
    const std::uint64_t trial_seed = derive_seed({pair_seed, static_cast<std::uint64_t>(t)});
    costs[t] = run_trial(spec.plant, spec.weights, ctrl, dist, trial_seed);
  }
}

}  // namespace

std::vector<CostStats> monte_carlo(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw DomainError("monte_carlo: trials must be >= 1");
  if (spec.controllers.size() != spec.controller_ids.size())
    throw DimensionError("monte_carlo: controller id list mismatch");

  int workers = spec.workers > 0
                    ? spec.workers
                    : static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
  workers = std::min(workers, spec.trials);

  std::vector<CostStats> table;
  for (std::size_t ci = 0; ci < spec.controllers.size(); ++ci) {
    for (const auto& dist : spec.true_distributions) {
      // Common random numbers across controllers: the stream is keyed by
      // (master seed, distribution, trial) only, so every controller faces the
      // same noise realizations and comparisons are paired.
      const std::uint64_t pair_seed = derive_seed(
          {spec.master_seed, mechanism_key(dist), param_key(dist.parameter())});
      std::vector<double> costs(spec.trials);
      if (workers <= 1) {
        run_block(spec, spec.controllers[ci], dist, pair_seed, 0, spec.trials, costs);
      } else {
        std::vector<std::thread> pool;
        const int chunk = (spec.trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
          const int lo = w * chunk;
          const int hi = std::min(spec.trials, lo + chunk);
          if (lo >= hi) break;
          pool.emplace_back(run_block, std::cref(spec), std::cref(spec.controllers[ci]),
                            std::cref(dist), pair_seed, lo, hi, std::ref(costs));
        }
        for (auto& th : pool) th.join();
      }
      // Aggregation is order-insensitive: costs are keyed by trial index and
      // reduced after the fact.
      std::vector<double> sorted = costs;
      std::sort(sorted.begin(), sorted.end());
      double sum = 0.0;
      for (double c : costs) sum += c;
      const int rank = static_cast<int>(std::ceil(0.95 * spec.trials));
      CostStats st;
      st.controller_id = spec.controller_ids[ci];
      st.distribution_id = dist.label();
      st.parameter = dist.parameter();
      st.mean = sum / spec.trials;
      st.p95 = sorted[std::max(0, rank - 1)];
      st.worst = sorted.back();
      st.min = sorted.front();
      st.trials = spec.trials;
      st.seed = spec.master_seed;
      table.push_back(std::move(st));
    }
  }
  return table;
}

SweepResult privacy_sweep(const PlantModel& plant, const CostWeights& weights, double gamma,
                          const std::vector<double>& epsilon_grid,
                          const std::vector<double>& delta_grid, double upper_ratio, int trials,
                          std::uint64_t master_seed, int workers, int tau_grid_size) {
  SweepResult result;
  const int L = plant.stacked_dim();
  for (Mechanism mech : {Mechanism::Gaussian, Mechanism::Laplace}) {
    for (double eps : epsilon_grid) {
      for (double delta : delta_grid) {
        PrivacySpec ps{eps, delta, gamma, mech};
        AmbiguityBounds bounds;
        bounds.L = L;
        try {
          // The ambiguity set always carries both families; its Gaussian
          // nominal center needs the Lemma-1 hypotheses regardless of the
          // mechanism actually simulated.
          bounds.sigma2_lo = gaussian_sigma_lower({eps, delta, gamma, Mechanism::Gaussian},
                                                  plant.C);
          bounds.b_lo = laplace_b_lower({eps, delta, gamma, Mechanism::Laplace}, plant.C);
        } catch (const InvalidBudget&) {
          ++result.skipped;
          continue;
        }
        bounds.sigma2_hi = upper_ratio * bounds.sigma2_lo;
        bounds.b_hi = upper_ratio * bounds.b_lo;
        const KlRadius radius = radius_eta(bounds);
        const DrSynthesis synth =
            synthesize_dr(radius.eta, plant, weights, bounds.sigma2_lo, tau_grid_size);

        ExperimentSpec spec;
        spec.plant = plant;
        spec.weights = weights;
        spec.controllers = {synth.controller};
        spec.controller_ids = {"proposed"};
        spec.true_distributions = {mech == Mechanism::Gaussian
                                       ? NoiseDistribution::gaussian(bounds.sigma2_lo, L)
                                       : NoiseDistribution::laplace(bounds.b_lo, L)};
        spec.trials = trials;
        spec.master_seed = derive_seed({master_seed, mechanism_key(spec.true_distributions[0]),
                                        param_key(eps), param_key(delta)});
        spec.workers = workers;
        const auto stats = monte_carlo(spec);
        result.points.push_back({ps.mechanism == Mechanism::Gaussian ? "gaussian" : "laplace",
                                 eps, delta, stats.at(0).mean});
      }
    }
  }
  return result;
}

}  // namespace dpdrc
