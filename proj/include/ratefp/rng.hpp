#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

namespace ratefp {

// Counter-based random streams: every (seed, stream) pair owns an unbounded
// sequence of draws addressed by index, so ensembles are reproducible
// independent of scheduling and thread count.

inline std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed) ^ (0xD1B54A32D192ED03ULL + stream))) {}

  // uniform in the open interval (0, 1)
  double uniform(std::uint64_t index) const {
    const std::uint64_t v = mix64(key_ + index * 0x9E3779B97F4A7C15ULL);
    return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal pair by Box-Muller from draws (2*index, 2*index+1)
  void normal_pair(std::uint64_t index, double& z0, double& z1) const {
    const double u1 = uniform(2 * index);
    const double u2 = uniform(2 * index + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(a);
    z1 = r * std::sin(a);
  }

  double normal(std::uint64_t index) const {
    double z0, z1;
    normal_pair(index, z0, z1);
    return z0;
  }

 private:
  std::uint64_t key_;
};

}  // namespace ratefp
