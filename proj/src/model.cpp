#include "dpdrc/model.hpp"

#include <sstream>

#include "dpdrc/errors.hpp"

namespace dpdrc {

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& i : issues) os << i.code << "(" << i.field << "): " << i.message << "\n";
  return os.str();
}

namespace {

constexpr double kSymTol = 1e-12;

void check_square(ValidationReport& r, const Matrix& m, int n, const std::string& field) {
  if (m.rows() != n || m.cols() != n) {
    r.issues.push_back({"DimensionMismatch", field, "expected " + std::to_string(n) + "x" +
                                                        std::to_string(n)});
  }
}

// Symmetrize in place when the asymmetry is round-trip noise; reject otherwise.
bool settle_symmetric(ValidationReport& r, Matrix& m, const std::string& field) {
  if (asymmetry(m) > kSymTol) {
    r.issues.push_back({"NotSymmetric", field, "relative asymmetry above 1e-12"});
    return false;
  }
  m = symmetrized(m);
  return true;
}

void check_pd(ValidationReport& r, Matrix& m, const std::string& field) {
  if (!settle_symmetric(r, m, field)) return;
  if (!is_positive_definite(m)) {
    r.issues.push_back({"NotPositiveDefinite", field, "matrix is not positive definite"});
  }
}

void check_psd(ValidationReport& r, Matrix& m, const std::string& field) {
  if (!settle_symmetric(r, m, field)) return;
  if (!is_positive_semidefinite(m)) {
    r.issues.push_back({"NotPositiveDefinite", field, "matrix is not positive semidefinite"});
  }
}

}  // namespace

ValidationReport validate_model(PlantModel& plant, CostWeights& weights) {
  ValidationReport r;
  const int n = plant.n();
  const int m = plant.m();
  const int p = plant.p();

  if (n < 1) r.issues.push_back({"DimensionMismatch", "A", "state dimension must be >= 1"});
  if (m < 1) r.issues.push_back({"DimensionMismatch", "B", "input dimension must be >= 1"});
  if (p < 1) r.issues.push_back({"DimensionMismatch", "C", "output dimension must be >= 1"});
  if (plant.N < 1) r.issues.push_back({"BadValue", "N", "horizon must be a positive integer"});
  if (!r.ok()) return r;

  check_square(r, plant.A, n, "A");
  if (plant.B.rows() != n)
    r.issues.push_back({"DimensionMismatch", "B", "row count must equal n"});
  if (plant.C.cols() != n)
    r.issues.push_back({"DimensionMismatch", "C", "column count must equal n"});
  if (plant.x_ini.size() != n)
    r.issues.push_back({"DimensionMismatch", "x_ini", "length must equal n"});
  check_square(r, plant.Sigma_w, n, "Sigma_w");
  check_square(r, plant.Sigma_ini, n, "Sigma_ini");
  check_square(r, weights.Q, n, "Q");
  check_square(r, weights.Q_N, n, "Q_N");
  check_square(r, weights.R, m, "R");
  if (!r.ok()) return r;

  check_pd(r, plant.Sigma_w, "Sigma_w");
  check_pd(r, plant.Sigma_ini, "Sigma_ini");
  check_psd(r, weights.Q, "Q");
  check_psd(r, weights.Q_N, "Q_N");
  check_pd(r, weights.R, "R");
  return r;
}

double stage_cost(const Trajectory& trajectory, const CostWeights& weights) {
  const auto N = trajectory.inputs.size();
  if (trajectory.states.size() != N + 1)
    throw DimensionError("stage_cost: states must have length N+1");
  double j = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const Vector& x = trajectory.states[k];
    const Vector& u = trajectory.inputs[k];
    if (x.size() != weights.Q.rows() || u.size() != weights.R.rows())
      throw DimensionError("stage_cost: state/input dimension mismatch");
    j += 0.5 * (x.dot(weights.Q * x) + u.dot(weights.R * u));
  }
  const Vector& xN = trajectory.states[N];
  if (xN.size() != weights.Q_N.rows())
    throw DimensionError("stage_cost: terminal state dimension mismatch");
  j += 0.5 * xN.dot(weights.Q_N * xN);
  return j;
}

}  // namespace dpdrc
