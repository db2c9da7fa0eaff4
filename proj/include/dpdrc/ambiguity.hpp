#pragma once

#include <string>

namespace dpdrc {

// Parameter intervals of the admissible-noise set: Gaussian variances in
// [sigma2_lo, sigma2_hi], Laplace scales in [b_lo, b_hi], stacked dimension L.
// The nominal distribution is N(0, sigma2_lo * I_L).
struct AmbiguityBounds {
  double sigma2_lo = 0.0;
  double sigma2_hi = 0.0;
  double b_lo = 0.0;
  double b_hi = 0.0;
  int L = 1;

  void validate() const;  // throws DomainError on interval/range violations
};

// Radius of the KL ball containing every admissible distribution:
// eta = (L/2) max{eta1, eta2} with eta1 the Gaussian branch, eta2 the Laplace
// branch. All logarithms in this module are natural.
struct KlRadius {
  double eta;
  double eta1;
  double eta2;
  std::string branch() const { return eta2 >= eta1 ? "laplace" : "gaussian"; }
};

// g(x) = log(sigma2_lo / x) + x / sigma2_lo; strictly convex, min g(sigma2_lo)=1.
double g(double x, double sigma2_lo);

// KL( N(0, sigma2 I_L) || N(0, sigma2_lo I_L) ) = (L/2)(g(sigma2) - 1)
double kl_gaussian_gaussian(double sigma2, double sigma2_lo, int L);

// KL( Lap(b, L) || N(0, sigma2_lo I_L) ) = (L/2)(g(2 b^2) - 2 + log pi)
double kl_laplace_gaussian(double b, double sigma2_lo, int L);

KlRadius radius_eta(const AmbiguityBounds& bounds);

// Independent 1-D check of the Laplace-vs-Gaussian KL: adaptive Simpson
// quadrature of the KL integrand over [-40b, 40b], absolute target 1e-9.
double kl_quadrature_oracle(double b, double sigma2);

}  // namespace dpdrc
