#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpdrc/model.hpp"

namespace dpdrc {

struct RecursionFailure {
  int step;
  std::string condition;
};

// Estimator-side quantities of the tau-coupled forward recursion
//   P_k = Sigma_k^{-1} + C'C/sigma2_lo - Q/tau,
//   Sigma_{k+1} = Sigma_w + A P_k^{-1} A',   Sigma_0 = Sigma_ini,
// feasible iff Sigma_k > 0 and P_k > 0 for k = 0..N-1.
struct ForwardPass {
  std::vector<Matrix> Sigma;  // k = 0..N
  std::vector<Matrix> P;      // k = 0..N-1
  std::vector<Matrix> K;      // estimator gains A P_k^{-1} C'/sigma2_lo, k = 0..N-1
  bool feasible = false;
  std::optional<RecursionFailure> first_failure;
};

// Feedback-side quantities of the backward recursion
//   Pi_k = Q + A' L_{k+1}^{-1} A,  L_{k+1} = Pi_{k+1}^{-1} + B R^{-1} B' - Sigma_w/tau,
//   Pi_N = Q_N,
// feasible iff Pi_{k+1}^{-1} - Sigma_w/tau > 0 and Pi_k^{-1} - Sigma_k/tau > 0
// for k = 0..N-1. L inverses are formed as Pi (I + G Pi)^{-1} with
// G = B R^{-1} B' - Sigma_w/tau, and the definiteness conditions as eigenvalue
// bounds lambda_max(Pi S) < tau, so a merely PSD Q_N never needs Pi_N^{-1}.
struct BackwardPass {
  std::vector<Matrix> Pi;     // k = 0..N, Pi[N] = Q_N
  std::vector<Matrix> L_inv;  // L_{k+1}^{-1} stored at index k+1, k+1 = 1..N
  std::vector<Matrix> F;      // feedback gains, k = 0..N-1
  bool feasible = false;
  std::optional<RecursionFailure> first_failure;
};

struct RiccatiSolution {
  double tau = 0.0;
  ForwardPass forward;
  BackwardPass backward;
  // Present iff both passes are feasible and the two extra value-function
  // conditions hold: Sigma_N^{-1} - Q_N/tau > 0 and Pi_0^{-1} - Sigma_ini/tau > 0.
  std::optional<double> w_tau;
  std::string infeasibility;  // empty when w_tau is present
};

ForwardPass forward_riccati(const PlantModel& plant, const CostWeights& weights,
                            double sigma2_lo, double tau);

BackwardPass backward_riccati(const PlantModel& plant, const CostWeights& weights, double tau,
                              const ForwardPass& forward);

// Both passes plus the closed-form optimal value of the risk-sensitive problem.
RiccatiSolution solve_riccati(const PlantModel& plant, const CostWeights& weights,
                              double sigma2_lo, double tau);

// Closed-form W_tau; absent when any feasibility condition fails.
std::optional<double> w_tau(const PlantModel& plant, const CostWeights& weights,
                            double sigma2_lo, double tau);

// tau (eta + W_tau); absent when W_tau is.
std::optional<double> objective(double eta, const PlantModel& plant, const CostWeights& weights,
                                double sigma2_lo, double tau);

}  // namespace dpdrc
