#pragma once

#include <Eigen/Dense>
#include <optional>

namespace dpdrc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// (M + M^T)/2
Matrix symmetrized(const Matrix& m);

// Relative asymmetry ||M - M^T|| / max(1, ||M||), infinity norms.
double asymmetry(const Matrix& m);

// Positive definiteness via LDLT pivots: all pivots > tol, where
// tol = rel_tol * max(diag)  (model-module convention) or an absolute floor.
bool is_positive_definite(const Matrix& m, double rel_tol = 1e-12);

// Positive semidefiniteness: pivots >= -tol.
bool is_positive_semidefinite(const Matrix& m, double rel_tol = 1e-12);

// Inverse of a symmetric positive definite matrix through LLT; nullopt when the
// factorization fails or a pivot is below rel_tol * trace(M)/n.
std::optional<Matrix> spd_inverse(const Matrix& m, double rel_tol = 1e-10);

// log det of a symmetric positive definite matrix (nullopt when not PD).
std::optional<double> spd_logdet(const Matrix& m, double rel_tol = 1e-10);

// Largest eigenvalue of M*S for symmetric PSD M and symmetric PD S, computed as
// lambda_max(L^T M L) with S = L L^T so the problem stays symmetric.
double lambda_max_product(const Matrix& m, const Matrix& s_pd);

// Symmetric PSD square root (eigendecomposition, eigenvalues clamped at 0).
Matrix psd_sqrt(const Matrix& m);

// max_j sum_i |C_ij|  (induced 1-norm)
double induced_norm_1(const Matrix& c);

// largest singular value (induced 2-norm)
double induced_norm_2(const Matrix& c);

}  // namespace dpdrc
