#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace dpdrc {

// splitmix64 step; also used to mix key material into stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based seed derivation: the stream for (master, id...) is independent
// of execution order, so parallel trials stay deterministic.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t state = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t k : keys) {
    state ^= k + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2);
    (void)splitmix64(state);
  }
  return splitmix64(state);
}

// xoshiro256++ with splitmix64 seeding. Owns a Box-Muller spare so gaussian()
// consumes uniforms at a fixed, seed-determined cadence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform on [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal, Box-Muller pair with cached spare
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // zero-mean Laplace with scale b, inverse-CDF transform (no rejection, so
  // draw counts map 1:1 to samples)
  double laplace(double b) {
    double u01 = uniform01();
    if (u01 == 0.0) u01 = 0x1.0p-53;
    const double u = u01 - 0.5;  // (-1/2, 1/2)
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return -b * sign * std::log(1.0 - 2.0 * std::abs(u));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dpdrc
