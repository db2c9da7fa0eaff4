#include <doctest.h>

#include "dpdrc/errors.hpp"
#include "dpdrc/model.hpp"
#include "dpdrc/rng.hpp"
#include "test_helpers.hpp"

using namespace dpdrc;
using dpdrc::testing::benchmark;

namespace {

Trajectory random_trajectory(const PlantModel& plant, std::uint64_t seed) {
  Rng rng(seed);
  Trajectory tr;
  for (int k = 0; k <= plant.N; ++k) {
    Vector x(plant.n());
    for (int i = 0; i < plant.n(); ++i) x(i) = rng.gaussian();
    tr.states.push_back(x);
    Vector y(plant.p());
    for (int i = 0; i < plant.p(); ++i) y(i) = rng.gaussian();
    tr.outputs_privatized.push_back(y);
  }
  for (int k = 0; k < plant.N; ++k) {
    Vector u(plant.m());
    for (int i = 0; i < plant.m(); ++i) u(i) = rng.gaussian();
    tr.inputs.push_back(u);
  }
  return tr;
}

}  // namespace

TEST_CASE("benchmark plant validates cleanly") {
  auto cfg = benchmark();
  const auto report = validate_model(cfg.plant, cfg.weights);
  CHECK(report.ok());
  CHECK(cfg.plant.N == 20);
  CHECK(cfg.plant.stacked_dim() == 21);
}

TEST_CASE("zero initial covariance is rejected") {
  auto cfg = benchmark();
  cfg.plant.Sigma_ini.setZero();
  const auto report = validate_model(cfg.plant, cfg.weights);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& i : report.issues)
    if (i.code == "NotPositiveDefinite" && i.field == "Sigma_ini") found = true;
  CHECK(found);
}

TEST_CASE("B with a bad row count is a dimension mismatch") {
  auto cfg = benchmark();
  cfg.plant.B = Matrix::Ones(3, 1);
  const auto report = validate_model(cfg.plant, cfg.weights);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issues.front().code == "DimensionMismatch");
  CHECK(report.issues.front().field == "B");
}

TEST_CASE("asymmetry handling: tiny noise symmetrized, real skew rejected") {
  auto cfg = benchmark();
  cfg.weights.Q(0, 1) += 1e-14;
  CHECK(validate_model(cfg.plant, cfg.weights).ok());
  CHECK(cfg.weights.Q(0, 1) == cfg.weights.Q(1, 0));  // settled to the mean

  auto cfg2 = benchmark();
  cfg2.weights.Q(0, 1) += 1e-6;
  const auto report = validate_model(cfg2.plant, cfg2.weights);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issues.front().code == "NotSymmetric");
  CHECK(report.issues.front().field == "Q");
}

TEST_CASE("stage cost: zero trajectory costs nothing") {
  auto cfg = benchmark();
  Trajectory tr;
  for (int k = 0; k <= cfg.plant.N; ++k) {
    tr.states.push_back(Vector::Zero(2));
    tr.outputs_privatized.push_back(Vector::Zero(1));
  }
  for (int k = 0; k < cfg.plant.N; ++k) tr.inputs.push_back(Vector::Zero(1));
  CHECK(stage_cost(tr, cfg.weights) == 0.0);
}

TEST_CASE("stage cost: one-step scalar instance by hand") {
  // n=m=1, N=1, Q=Q_N=R=1, x=(2,3), u=(1): 0.5*9 + 0.5*(4+1) = 7
  CostWeights w{Matrix::Identity(1, 1), Matrix::Identity(1, 1), Matrix::Identity(1, 1)};
  Trajectory tr;
  tr.states = {Vector::Constant(1, 2.0), Vector::Constant(1, 3.0)};
  tr.inputs = {Vector::Constant(1, 1.0)};
  CHECK(stage_cost(tr, w) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("stage cost properties: homogeneity and sign flip") {
  auto cfg = benchmark();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Trajectory tr = random_trajectory(cfg.plant, seed);
    const double j = stage_cost(tr, cfg.weights);
    CHECK(j >= 0.0);

    Trajectory flipped = tr;
    for (auto& x : flipped.states) x = -x;
    for (auto& u : flipped.inputs) u = -u;
    CHECK(stage_cost(flipped, cfg.weights) == doctest::Approx(j).epsilon(1e-12));

    const double c = 0.5 + 0.1 * static_cast<double>(seed);
    Trajectory scaled = tr;
    for (auto& x : scaled.states) x *= c;
    for (auto& u : scaled.inputs) u *= c;
    CHECK(stage_cost(scaled, cfg.weights) == doctest::Approx(c * c * j).epsilon(1e-12));
  }
}

TEST_CASE("stage cost with zero state weights depends only on inputs") {
  auto cfg = benchmark();
  CostWeights w = cfg.weights;
  w.Q.setZero();
  w.Q_N.setZero();
  Trajectory a = random_trajectory(cfg.plant, 1);
  Trajectory b = random_trajectory(cfg.plant, 2);
  b.inputs = a.inputs;
  CHECK(stage_cost(a, w) == doctest::Approx(stage_cost(b, w)).epsilon(1e-12));

  // R -> R + eps I strictly increases the cost while any input is nonzero
  CostWeights w_up = w;
  w_up.R += 1e-3 * Matrix::Identity(1, 1);
  CHECK(stage_cost(a, w_up) > stage_cost(a, w));
}

TEST_CASE("stage cost rejects inconsistent lengths") {
  auto cfg = benchmark();
  Trajectory tr = random_trajectory(cfg.plant, 3);
  tr.states.pop_back();
  CHECK_THROWS_AS(stage_cost(tr, cfg.weights), DimensionError);
}
