#pragma once

#include <cstdint>
#include <variant>

#include "dpdrc/linalg.hpp"

namespace dpdrc {

enum class Mechanism { Gaussian, Laplace };

// Privacy requirement: (eps, delta)-DP over trajectory pairs within l1
// distance gamma. The Gaussian mechanism additionally needs eps < 1, delta > 0.
struct PrivacySpec {
  double epsilon = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  Mechanism mechanism = Mechanism::Gaussian;
};

struct GaussianNoise {
  double sigma2;  // per-coordinate variance
};
struct LaplaceNoise {
  double b;  // scale
};

// Stacked i.i.d. measurement-noise distribution of dimension L = p(N+1).
struct NoiseDistribution {
  std::variant<GaussianNoise, LaplaceNoise> family;
  int L = 1;

  static NoiseDistribution gaussian(double sigma2, int L);
  static NoiseDistribution laplace(double b, int L);
  bool is_gaussian() const { return std::holds_alternative<GaussianNoise>(family); }
  double parameter() const;
  std::string label() const;  // "gaussian" | "laplace"
};

struct InducedNorms {
  double norm1;  // max absolute column sum
  double norm2;  // spectral norm
};

InducedNorms induced_norms(const Matrix& C);

// sigma^2 >= 2 ln(1.25/delta) ||C||_2^2 gamma^2 / eps^2, returned at equality.
double gaussian_sigma_lower(const PrivacySpec& spec, const Matrix& C);

// b >= ||C||_1 gamma / eps, returned at equality.
double laplace_b_lower(const PrivacySpec& spec, const Matrix& C);

// Stacked noise draw; identical (dist, seed) pairs give identical vectors.
Vector sample_noise(const NoiseDistribution& dist, std::uint64_t seed);

}  // namespace dpdrc
