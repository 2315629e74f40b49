#pragma once

#include <cmath>
#include <cstdint>

#include "photocool/constants.hpp"

namespace photocool {

// Counter-style splitmix64; cheap, full-period, and trivially seedable per
// stream so parallel realizations never share state.
struct SplitMix64 {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 h{seed ^ (0xD1B54A32D192ED03ULL * (stream + 1))};
  h.next();
  return h.next();
}

struct GaussianPair {
  double z1, z2;
};

// Portable Gaussian stream (Box-Muller on splitmix64 uniforms): bit-identical
// across platforms and independent of library distribution internals.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t stream) : rng_{mix_seed(seed, stream)} {}

  double uniform01() {  // open interval (0, 1)
    return (static_cast<double>(rng_.next() >> 11) + 0.5) * 0x1.0p-53;
  }

  GaussianPair gaussian_pair() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  SplitMix64 rng_;
};

}  // namespace photocool
