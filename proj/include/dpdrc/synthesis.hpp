#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dpdrc/riccati.hpp"

namespace dpdrc {

enum class ControllerKind { DistributionallyRobust, LqgBaseline };

// Executable output-feedback policy. Both kinds share the rollout
//   u(k)       = -F_k x_hat(k)
//   x_hat(k+1) = A x_hat(k) + B u(k) + K_k (y~(k) - C x_hat(k))  [+ corr_k x_hat(k)]
// with the correction corr_k = A P_k^{-1} Q / tau present only for the robust
// kind. For the LQG baseline K_k is the one-step-predictor Kalman gain A M_k
// and F_k the risk-neutral LQR gain (certainty-equivalent composition), i.e.
// exactly the robust controller's tau -> infinity limit. Immutable after
// synthesis; the estimator state is a value threaded through control_step.
struct Controller {
  ControllerKind kind;
  double tau = 0.0;  // DR only
  std::vector<Matrix> estimator_gains;      // length N
  std::vector<Matrix> feedback_gains;       // length N
  std::vector<Matrix> correction_matrices;  // length N (DR), empty for LQG
  PlantModel plant;
  double sigma2_nom = 0.0;
  Vector xhat0;

  int horizon() const { return plant.N; }
};

struct TauEvaluation {
  double tau;
  std::optional<double> objective;  // absent = infeasible
};

struct TauSearchReport {
  double tau_star = 0.0;
  double objective_star = 0.0;
  std::pair<double, double> feasible_interval_estimate;  // (boundary found, max scanned)
  std::vector<TauEvaluation> evaluations;
};

struct DrSynthesis {
  Controller controller;
  TauSearchReport report;
};

// Smallest feasible tau to 1e-3 relative precision: doubling scan up from 1e-3
// (cap 1e12), then bisection; returns the boundary's feasible side.
// Throws NoFeasibleTau when the cap is reached.
double find_feasible_tau(const PlantModel& plant, const CostWeights& weights, double sigma2_lo);

// Minimizes tau (eta + W_tau) on a log grid from the feasibility boundary to
// 100x the boundary, then golden-section refinement inside every local basin
// (unimodality is not assumed). grid_size >= 16.
TauSearchReport optimize_tau(double eta, const PlantModel& plant, const CostWeights& weights,
                             double sigma2_lo, int grid_size = 96, int refine_iters = 60);

DrSynthesis synthesize_dr(double eta, const PlantModel& plant, const CostWeights& weights,
                          double sigma2_lo, int grid_size = 96, int refine_iters = 60);

// DR controller at a pinned tau (debug / risk-neutral-limit checks).
Controller synthesize_dr_at_tau(const PlantModel& plant, const CostWeights& weights,
                                double sigma2_lo, double tau);

// Standard finite-horizon LQG under v ~ N(0, sigma2_nom I): Kalman filter in
// measurement-update form composed with the risk-neutral LQR gains.
Controller synthesize_lqg(const PlantModel& plant, const CostWeights& weights,
                          double sigma2_nom);

// One closed-loop step; state is the estimator state (x_hat(k)), k in [0, N).
std::pair<Vector, Vector> control_step(const Controller& ctrl, int k, const Vector& y_tilde,
                                       const Vector& state);

// Risk-neutral reference recursions (independent covariance-form route, used
// as the tau -> infinity oracle and inside the LQG baseline).
struct KalmanGains {
  std::vector<Matrix> Sigma_pred;   // k = 0..N, one-step-ahead covariances
  std::vector<Matrix> filter_gain;  // M_k = Sigma_pred C'(C Sigma_pred C' + sigma2 I)^{-1}
};
KalmanGains kalman_filter_gains(const PlantModel& plant, double sigma2);
std::vector<Matrix> lqr_gains(const PlantModel& plant, const CostWeights& weights);

}  // namespace dpdrc
