#include "dpdrc/riccati.hpp"

#include <Eigen/LU>
#include <cmath>

namespace dpdrc {

namespace {

constexpr double kPivotTol = 1e-10;

// (Pi^{-1} - S/tau)^{-1} = tau (tau I - Pi S)^{-1} Pi, valid for PSD Pi.
std::optional<Matrix> coupled_inverse(const Matrix& Pi, const Matrix& S, double tau) {
  const auto n = Pi.rows();
  Eigen::PartialPivLU<Matrix> lu(tau * Matrix::Identity(n, n) - Pi * S);
  const double det = lu.determinant();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return std::nullopt;
  return symmetrized(tau * lu.solve(Pi));
}

}  // namespace

ForwardPass forward_riccati(const PlantModel& plant, const CostWeights& weights,
                            double sigma2_lo, double tau) {
  ForwardPass fp;
  const int N = plant.N;
  const Matrix CtC = plant.C.transpose() * plant.C / sigma2_lo;
  fp.Sigma.reserve(N + 1);
  fp.Sigma.push_back(symmetrized(plant.Sigma_ini));
  for (int k = 0; k < N; ++k) {
    const auto Sigma_inv = spd_inverse(fp.Sigma[k], kPivotTol);
    if (!Sigma_inv) {
      fp.first_failure = RecursionFailure{k, "Sigma_k > 0"};
      return fp;
    }
    const Matrix P = symmetrized(*Sigma_inv + CtC - weights.Q / tau);
    const auto P_inv = spd_inverse(P, kPivotTol);
    if (!P_inv) {
      fp.first_failure = RecursionFailure{k, "P_k > 0"};
      return fp;
    }
    fp.P.push_back(P);
    fp.K.push_back(plant.A * *P_inv * plant.C.transpose() / sigma2_lo);
    fp.Sigma.push_back(symmetrized(plant.Sigma_w + plant.A * *P_inv * plant.A.transpose()));
  }
  fp.feasible = true;
  return fp;
}

BackwardPass backward_riccati(const PlantModel& plant, const CostWeights& weights, double tau,
                              const ForwardPass& forward) {
  BackwardPass bp;
  const int N = plant.N;
  const int n = plant.n();
  bp.Pi.assign(N + 1, Matrix());
  bp.L_inv.assign(N + 1, Matrix());
  bp.F.assign(N, Matrix());
  bp.Pi[N] = symmetrized(weights.Q_N);

  const Matrix R_inv_Bt = Eigen::LLT<Matrix>(symmetrized(weights.R)).solve(plant.B.transpose());
  const Matrix G = plant.B * R_inv_Bt - plant.Sigma_w / tau;

  for (int k = N - 1; k >= 0; --k) {
    // Pi_{k+1}^{-1} - Sigma_w/tau > 0  <=>  lambda_max(Pi_{k+1} Sigma_w) < tau
    if (lambda_max_product(bp.Pi[k + 1], plant.Sigma_w) >= tau) {
      bp.first_failure = RecursionFailure{k + 1, "Pi_{k+1}^{-1} - Sigma_w/tau > 0"};
      return bp;
    }
    Eigen::PartialPivLU<Matrix> lu(Matrix::Identity(n, n) + G * bp.Pi[k + 1]);
    const double det = lu.determinant();
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
      bp.first_failure = RecursionFailure{k + 1, "L_{k+1} invertible"};
      return bp;
    }
    // L^{-1} = Pi (I + G Pi)^{-1}, inverse-free in Pi so Pi_N = Q_N may be singular
    bp.L_inv[k + 1] = symmetrized(bp.Pi[k + 1] * lu.inverse());
    bp.Pi[k] = symmetrized(weights.Q + plant.A.transpose() * bp.L_inv[k + 1] * plant.A);
    if (lambda_max_product(bp.Pi[k], forward.Sigma[k]) >= tau) {
      bp.first_failure = RecursionFailure{k, "Pi_k^{-1} - Sigma_k/tau > 0"};
      return bp;
    }
    // F_k = R^{-1} B' L_{k+1}^{-1} A (I - Sigma_k Pi_k / tau)^{-1}
    Eigen::PartialPivLU<Matrix> lu2(Matrix::Identity(n, n) -
                                    forward.Sigma[k] * bp.Pi[k] / tau);
    bp.F[k] = R_inv_Bt * bp.L_inv[k + 1] * plant.A * lu2.inverse();
  }
  bp.feasible = true;
  return bp;
}

RiccatiSolution solve_riccati(const PlantModel& plant, const CostWeights& weights,
                              double sigma2_lo, double tau) {
  RiccatiSolution sol;
  sol.tau = tau;
  const int N = plant.N;
  sol.forward = forward_riccati(plant, weights, sigma2_lo, tau);
  if (!sol.forward.feasible) {
    const auto& f = *sol.forward.first_failure;
    sol.infeasibility = "forward step " + std::to_string(f.step) + ": " + f.condition;
    return sol;
  }
  sol.backward = backward_riccati(plant, weights, tau, sol.forward);
  if (!sol.backward.feasible) {
    const auto& f = *sol.backward.first_failure;
    sol.infeasibility = "backward step " + std::to_string(f.step) + ": " + f.condition;
    return sol;
  }

  const auto& fwd = sol.forward;
  const auto& bwd = sol.backward;
  const Matrix CtC = plant.C.transpose() * plant.C / sigma2_lo;
  const int p = plant.p();

  // Extra conditions required by the value function's log-det terms.
  if (lambda_max_product(bwd.Pi[0], plant.Sigma_ini) >= tau) {
    sol.infeasibility = "Pi_0^{-1} - Sigma_ini/tau > 0";
    return sol;
  }
  const auto SigmaN_inv = spd_inverse(fwd.Sigma[N], kPivotTol);
  if (!SigmaN_inv) {
    sol.infeasibility = "Sigma_N > 0";
    return sol;
  }
  const auto terminal_logdet = spd_logdet(*SigmaN_inv - weights.Q_N / tau, kPivotTol);
  if (!terminal_logdet) {
    sol.infeasibility = "Sigma_N^{-1} - Q_N/tau > 0";
    return sol;
  }

  double w = 0.0;
  // quadratic initial-state term: (1/2tau) x_ini' (Pi_0^{-1} - Sigma_ini/tau)^{-1} x_ini
  const auto M0 = coupled_inverse(bwd.Pi[0], plant.Sigma_ini, tau);
  if (!M0) {
    sol.infeasibility = "Pi_0^{-1} - Sigma_ini/tau > 0";
    return sol;
  }
  w += plant.x_ini.dot(*M0 * plant.x_ini) / (2.0 * tau);
  w -= 0.5 * *spd_logdet(plant.Sigma_ini, kPivotTol);

  for (int k = 0; k < N; ++k) {
    // D_k = P_k - C'C/sigma2_lo = Sigma_k^{-1} - Q/tau; a pivot breach here is
    // treated as an infeasible tau, not an error.
    const Matrix D = symmetrized(fwd.P[k] - CtC);
    const auto D_logdet = spd_logdet(D, kPivotTol);
    const auto D_inv = spd_inverse(D, kPivotTol);
    const auto Sigma_logdet = spd_logdet(fwd.Sigma[k + 1], kPivotTol);
    if (!D_logdet || !D_inv || !Sigma_logdet) {
      sol.infeasibility = "P_k - C'C/sigma2 > 0 at step " + std::to_string(k);
      return sol;
    }
    w -= 0.5 * (*Sigma_logdet + *D_logdet);

    const auto M = coupled_inverse(bwd.Pi[k + 1], fwd.Sigma[k + 1], tau);
    if (!M) {
      sol.infeasibility = "Pi_{k+1}^{-1} - Sigma_{k+1}/tau > 0 at step " + std::to_string(k);
      return sol;
    }
    const Matrix inner =
        sigma2_lo * Matrix::Identity(p, p) + plant.C * *D_inv * plant.C.transpose();
    const Matrix arg = Matrix::Identity(plant.n(), plant.n()) -
                       fwd.K[k] * inner * fwd.K[k].transpose() * *M / tau;
    const double det = Eigen::PartialPivLU<Matrix>(arg).determinant();
    if (!(det > 0.0) || !std::isfinite(det)) {
      sol.infeasibility = "value log-det argument at step " + std::to_string(k);
      return sol;
    }
    w -= 0.5 * std::log(det);
  }
  w -= 0.5 * *terminal_logdet;
  sol.w_tau = w;
  return sol;
}

std::optional<double> w_tau(const PlantModel& plant, const CostWeights& weights,
                            double sigma2_lo, double tau) {
  return solve_riccati(plant, weights, sigma2_lo, tau).w_tau;
}

std::optional<double> objective(double eta, const PlantModel& plant, const CostWeights& weights,
                                double sigma2_lo, double tau) {
  const auto w = w_tau(plant, weights, sigma2_lo, tau);
  if (!w) return std::nullopt;
  return tau * (eta + *w);
}

}  // namespace dpdrc
