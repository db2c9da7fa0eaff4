#include "dpdrc/privacy.hpp"

#include <cmath>

#include "dpdrc/errors.hpp"
#include "dpdrc/rng.hpp"

namespace dpdrc {

NoiseDistribution NoiseDistribution::gaussian(double sigma2, int L) {
  if (!(sigma2 > 0.0)) throw DomainError("gaussian noise requires sigma2 > 0");
  if (L < 1) throw DomainError("stacked dimension L must be >= 1");
  return {GaussianNoise{sigma2}, L};
}

NoiseDistribution NoiseDistribution::laplace(double b, int L) {
  if (!(b > 0.0)) throw DomainError("laplace noise requires b > 0");
  if (L < 1) throw DomainError("stacked dimension L must be >= 1");
  return {LaplaceNoise{b}, L};
}

double NoiseDistribution::parameter() const {
  return is_gaussian() ? std::get<GaussianNoise>(family).sigma2
                       : std::get<LaplaceNoise>(family).b;
}

std::string NoiseDistribution::label() const { return is_gaussian() ? "gaussian" : "laplace"; }

InducedNorms induced_norms(const Matrix& C) {
  if (C.rows() == 0 || C.cols() == 0) throw DimensionError("induced_norms: empty matrix");
  return {induced_norm_1(C), induced_norm_2(C)};
}

double gaussian_sigma_lower(const PrivacySpec& spec, const Matrix& C) {
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0))
    throw InvalidBudget("gaussian mechanism requires epsilon in (0,1)");
  if (!(spec.delta > 0.0 && spec.delta < 1.0))
    throw InvalidBudget("gaussian mechanism requires delta in (0,1)");
  const double n2 = induced_norms(C).norm2;
  return 2.0 * std::log(1.25 / spec.delta) * n2 * n2 * spec.gamma * spec.gamma /
         (spec.epsilon * spec.epsilon);
}

double laplace_b_lower(const PrivacySpec& spec, const Matrix& C) {
  if (!(spec.epsilon > 0.0)) throw InvalidBudget("laplace mechanism requires epsilon > 0");
  return induced_norms(C).norm1 * spec.gamma / spec.epsilon;
}

Vector sample_noise(const NoiseDistribution& dist, std::uint64_t seed) {
  Rng rng(seed);
  Vector v(dist.L);
  if (dist.is_gaussian()) {
    const double sd = std::sqrt(std::get<GaussianNoise>(dist.family).sigma2);
    for (int i = 0; i < dist.L; ++i) v(i) = sd * rng.gaussian();
  } else {
    const double b = std::get<LaplaceNoise>(dist.family).b;
    for (int i = 0; i < dist.L; ++i) v(i) = rng.laplace(b);
  }
  return v;
}

}  // namespace dpdrc
