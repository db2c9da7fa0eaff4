#include "dpdrc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace dpdrc {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double asymmetry(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

namespace {

// LDLT pivots of the symmetrized input; empty when factorization fails.
std::optional<Vector> ldlt_pivots(const Matrix& m) {
  Eigen::LDLT<Matrix> f(symmetrized(m));
  if (f.info() != Eigen::Success) return std::nullopt;
  return Vector(f.vectorD());
}

}  // namespace

bool is_positive_definite(const Matrix& m, double rel_tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) return false;
  const auto d = ldlt_pivots(m);
  if (!d) return false;
  const double tol = rel_tol * std::max(m.diagonal().cwiseAbs().maxCoeff(), 0.0);
  return (d->array() > tol).all();
}

bool is_positive_semidefinite(const Matrix& m, double rel_tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) return false;
  const auto d = ldlt_pivots(m);
  if (!d) return false;
  const double tol = rel_tol * std::max(m.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  return (d->array() >= -tol).all();
}

namespace {

// One LLT serves both the PD test and the solve; pivot tolerance per the
// riccati-module convention: 1e-10 * trace(M)/n.
std::optional<Eigen::LLT<Matrix>> llt_checked(const Matrix& m, double rel_tol) {
  Matrix s = symmetrized(m);
  const auto n = static_cast<double>(s.rows());
  const double tol = rel_tol * std::max(s.trace() / n, 0.0);
  Eigen::LLT<Matrix> f(s);
  if (f.info() != Eigen::Success) return std::nullopt;
  if ((Vector(f.matrixLLT().diagonal()).array() <= std::sqrt(std::max(tol, 0.0))).any())
    return std::nullopt;
  return f;
}

}  // namespace

std::optional<Matrix> spd_inverse(const Matrix& m, double rel_tol) {
  auto f = llt_checked(m, rel_tol);
  if (!f) return std::nullopt;
  return f->solve(Matrix::Identity(m.rows(), m.cols()));
}

std::optional<double> spd_logdet(const Matrix& m, double rel_tol) {
  auto f = llt_checked(m, rel_tol);
  if (!f) return std::nullopt;
  return 2.0 * Vector(f->matrixLLT().diagonal()).array().log().sum();
}

double lambda_max_product(const Matrix& m, const Matrix& s_pd) {
  Eigen::LLT<Matrix> f(symmetrized(s_pd));
  const Matrix l = f.matrixL();
  const Matrix sym = symmetrized(l.transpose() * m * l);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m));
  Vector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

double induced_norm_1(const Matrix& c) {
  return c.cwiseAbs().colwise().sum().maxCoeff();
}

double induced_norm_2(const Matrix& c) {
  Eigen::JacobiSVD<Matrix> svd(c);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace dpdrc
