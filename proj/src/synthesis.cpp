#include "dpdrc/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpdrc/errors.hpp"

namespace dpdrc {

namespace {

constexpr double kTauScanFloor = 1e-3;
constexpr double kTauScanCap = 1e12;

bool tau_feasible(const PlantModel& plant, const CostWeights& weights, double sigma2_lo,
                  double tau) {
  return solve_riccati(plant, weights, sigma2_lo, tau).w_tau.has_value();
}

}  // namespace

double find_feasible_tau(const PlantModel& plant, const CostWeights& weights,
                         double sigma2_lo) {
  double hi = kTauScanFloor;
  double lo = 0.0;
  while (!tau_feasible(plant, weights, sigma2_lo, hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kTauScanCap)
      throw NoFeasibleTau("no feasible tau found up to " + std::to_string(kTauScanCap));
  }
  if (lo == 0.0) return hi;  // feasible at the scan floor already
  while ((hi - lo) / hi > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (tau_feasible(plant, weights, sigma2_lo, mid) ? hi : lo) = mid;
  }
  return hi;
}

namespace {

constexpr double kGolden = 0.61803398874989484820;

// Golden-section in log(tau) over [lo, hi]; infeasible points count as +inf.
std::pair<double, double> golden_refine(double eta, const PlantModel& plant,
                                        const CostWeights& weights, double sigma2_lo,
                                        double tau_lo, double tau_hi, int iters) {
  double a = std::log(tau_lo), b = std::log(tau_hi);
  auto eval = [&](double logt) {
    const auto obj = objective(eta, plant, weights, sigma2_lo, std::exp(logt));
    return obj ? *obj : std::numeric_limits<double>::infinity();
  };
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = eval(x2);
    }
  }
  const double logt = f1 <= f2 ? x1 : x2;
  return {std::exp(logt), std::min(f1, f2)};
}

}  // namespace

TauSearchReport optimize_tau(double eta, const PlantModel& plant, const CostWeights& weights,
                             double sigma2_lo, int grid_size, int refine_iters) {
  if (grid_size < 16) throw DomainError("optimize_tau: grid_size must be >= 16");
  const double boundary = find_feasible_tau(plant, weights, sigma2_lo);
  const double tau_max = 100.0 * boundary;

  TauSearchReport report;
  report.feasible_interval_estimate = {boundary, tau_max};
  report.evaluations.reserve(grid_size);

  std::vector<double> taus(grid_size);
  const double la = std::log(boundary), lb = std::log(tau_max);
  for (int i = 0; i < grid_size; ++i)
    taus[i] = std::exp(la + (lb - la) * i / (grid_size - 1.0));

  std::vector<std::optional<double>> objs(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    objs[i] = objective(eta, plant, weights, sigma2_lo, taus[i]);
    report.evaluations.push_back({taus[i], objs[i]});
  }

  // Every feasible point not strictly above a feasible neighbor starts a basin;
  // refine each and keep the global best (the grid may reveal several).
  double best_tau = 0.0;
  double best_obj = std::numeric_limits<double>::infinity();
  auto val = [&](int i) {
    return (i >= 0 && i < grid_size && objs[i]) ? *objs[i]
                                                : std::numeric_limits<double>::infinity();
  };
  bool any_feasible = false;
  for (int i = 0; i < grid_size; ++i) {
    if (!objs[i]) continue;
    any_feasible = true;
    if (*objs[i] <= val(i - 1) && *objs[i] <= val(i + 1)) {
      const double lo = i > 0 ? taus[i - 1] : taus[i];
      const double hi = i + 1 < grid_size ? taus[i + 1] : taus[i];
      auto [t, f] = lo < hi ? golden_refine(eta, plant, weights, sigma2_lo, lo, hi, refine_iters)
                            : std::pair<double, double>{taus[i], *objs[i]};
      if (*objs[i] < f) {
        t = taus[i];
        f = *objs[i];
      }
      if (f < best_obj) {
        best_obj = f;
        best_tau = t;
      }
    }
  }
  if (!any_feasible)
    throw NoFeasibleTau("objective infeasible on the whole search grid");
  report.tau_star = best_tau;
  report.objective_star = best_obj;
  return report;
}

namespace {

Controller build_dr_controller(const PlantModel& plant, const CostWeights& weights,
                               double sigma2_lo, double tau) {
  const RiccatiSolution sol = solve_riccati(plant, weights, sigma2_lo, tau);
  if (!sol.w_tau)
    throw NoFeasibleTau("riccati solution infeasible at tau = " + std::to_string(tau) + " (" +
                        sol.infeasibility + ")");
  Controller c;
  c.kind = ControllerKind::DistributionallyRobust;
  c.tau = tau;
  c.plant = plant;
  c.sigma2_nom = sigma2_lo;
  c.xhat0 = plant.x_ini;
  c.estimator_gains = sol.forward.K;
  c.feedback_gains = sol.backward.F;
  c.correction_matrices.reserve(plant.N);
  for (int k = 0; k < plant.N; ++k) {
    const Matrix P_inv = *spd_inverse(sol.forward.P[k]);
    c.correction_matrices.push_back(plant.A * P_inv * weights.Q / tau);
  }
  return c;
}

}  // namespace

DrSynthesis synthesize_dr(double eta, const PlantModel& plant, const CostWeights& weights,
                          double sigma2_lo, int grid_size, int refine_iters) {
  TauSearchReport report = optimize_tau(eta, plant, weights, sigma2_lo, grid_size, refine_iters);
  Controller c = build_dr_controller(plant, weights, sigma2_lo, report.tau_star);
  return {std::move(c), std::move(report)};
}

Controller synthesize_dr_at_tau(const PlantModel& plant, const CostWeights& weights,
                                double sigma2_lo, double tau) {
  return build_dr_controller(plant, weights, sigma2_lo, tau);
}

KalmanGains kalman_filter_gains(const PlantModel& plant, double sigma2) {
  KalmanGains kg;
  const int N = plant.N;
  const int p = plant.p();
  kg.Sigma_pred.reserve(N + 1);
  kg.filter_gain.reserve(N);
  kg.Sigma_pred.push_back(symmetrized(plant.Sigma_ini));
  for (int k = 0; k < N; ++k) {
    const Matrix& Sp = kg.Sigma_pred[k];
    const Matrix S = plant.C * Sp * plant.C.transpose() + sigma2 * Matrix::Identity(p, p);
    const Matrix M = Sp * plant.C.transpose() * S.llt().solve(Matrix::Identity(p, p));
    kg.filter_gain.push_back(M);
    const Matrix Sf = symmetrized(Sp - M * plant.C * Sp);
    kg.Sigma_pred.push_back(symmetrized(plant.A * Sf * plant.A.transpose() + plant.Sigma_w));
  }
  return kg;
}

std::vector<Matrix> lqr_gains(const PlantModel& plant, const CostWeights& weights) {
  const int N = plant.N;
  std::vector<Matrix> F(N);
  Matrix S = symmetrized(weights.Q_N);
  for (int k = N - 1; k >= 0; --k) {
    const Matrix H = weights.R + plant.B.transpose() * S * plant.B;
    F[k] = H.llt().solve(plant.B.transpose() * S * plant.A);
    S = symmetrized(weights.Q + plant.A.transpose() * S * (plant.A - plant.B * F[k]));
  }
  return F;
}

Controller synthesize_lqg(const PlantModel& plant, const CostWeights& weights,
                          double sigma2_nom) {
  Controller c;
  c.kind = ControllerKind::LqgBaseline;
  c.plant = plant;
  c.sigma2_nom = sigma2_nom;
  c.xhat0 = plant.x_ini;
  // One-step-predictor gains A M_k: the same estimator timing as the robust
  // controller's tau -> infinity limit, so the two policies differ only in
  // their gains.
  const KalmanGains kg = kalman_filter_gains(plant, sigma2_nom);
  c.estimator_gains.reserve(plant.N);
  for (int k = 0; k < plant.N; ++k) c.estimator_gains.push_back(plant.A * kg.filter_gain[k]);
  c.feedback_gains = lqr_gains(plant, weights);
  return c;
}

std::pair<Vector, Vector> control_step(const Controller& ctrl, int k, const Vector& y_tilde,
                                       const Vector& state) {
  if (k < 0 || k >= ctrl.horizon())
    throw std::out_of_range("control_step: step index " + std::to_string(k) +
                            " outside [0, N)");
  const PlantModel& pl = ctrl.plant;
  const Vector innovation = y_tilde - pl.C * state;
  const Vector u = -(ctrl.feedback_gains[k] * state);
  Vector next = pl.A * state + pl.B * u + ctrl.estimator_gains[k] * innovation;
  // correction term applied exactly as printed, after the innovation term
  if (ctrl.kind == ControllerKind::DistributionallyRobust)
    next += ctrl.correction_matrices[k] * state;
  return {u, next};
}

}  // namespace dpdrc
