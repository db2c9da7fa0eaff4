#pragma once

#include <string>
#include <vector>

#include "dpdrc/linalg.hpp"

namespace dpdrc {

// Discrete-time plant x(k+1) = A x(k) + B u(k) + w(k), y(k) = C x(k),
// x(0) ~ N(x_ini, Sigma_ini), w(k) ~ N(0, Sigma_w), over a horizon of N steps.
// States are indexed 0..N, inputs 0..N-1, privatized outputs 0..N, so the
// stacked measurement-noise dimension is L = p(N+1).
struct PlantModel {
  Matrix A;          // n x n
  Matrix B;          // n x m
  Matrix C;          // p x n
  Matrix Sigma_w;    // n x n, PD
  Vector x_ini;      // n
  Matrix Sigma_ini;  // n x n, PD
  int N = 0;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
  int p() const { return static_cast<int>(C.rows()); }
  int stacked_dim() const { return p() * (N + 1); }
};

struct CostWeights {
  Matrix Q;    // n x n, PSD
  Matrix Q_N;  // n x n, PSD
  Matrix R;    // m x m, PD
};

struct Trajectory {
  std::vector<Vector> states;              // length N+1
  std::vector<Vector> inputs;              // length N
  std::vector<Vector> outputs_privatized;  // length N+1
};

struct ValidationIssue {
  std::string code;   // DimensionMismatch | NotPositiveDefinite | NotSymmetric | BadValue
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string describe() const;
};

// Checks every type invariant; on success the returned copies have near-symmetric
// matrices symmetrized ((M + M^T)/2, tolerated up to 1e-12 relative asymmetry).
ValidationReport validate_model(PlantModel& plant, CostWeights& weights);

// (1/2) x_N' Q_N x_N + (1/2) sum_k (x_k' Q x_k + u_k' R u_k)
double stage_cost(const Trajectory& trajectory, const CostWeights& weights);

}  // namespace dpdrc
