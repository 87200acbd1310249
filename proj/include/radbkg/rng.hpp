#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "radbkg/constants.hpp"

namespace radbkg {

// xoshiro256++ with splitmix64 seeding. A seed plus a stream index gives an
// independent, reproducible stream; results are identical across platforms,
// which std::uniform_real_distribution does not guarantee.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t x = seed ^ mix(0x9E3779B97F4A7C15ULL * (stream + 1));
    for (auto& s : state_) {
      x += 0x9E3779B97F4A7C15ULL;
      s = mix(x);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
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

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // strictly positive exponential deviate with unit mean
  double exponential() { return -std::log(1.0 - uniform()); }

  double gaussian() {
    if (have_cache_) {
      have_cache_ = false;
      return cache_;
    }
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    cache_ = r * std::sin(2.0 * constants::pi * u2);
    have_cache_ = true;
    return r * std::cos(2.0 * constants::pi * u2);
  }

  std::array<double, 3> isotropic_direction() {
    double mu = uniform(-1.0, 1.0);
    double phi = 2.0 * constants::pi * uniform();
    double s = std::sqrt(1.0 - mu * mu);
    return {s * std::cos(phi), s * std::sin(phi), mu};
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::array<std::uint64_t, 4> state_{};
  double cache_ = 0.0;
  bool have_cache_ = false;
};

}  // namespace radbkg
