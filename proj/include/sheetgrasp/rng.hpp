#pragma once

#include <cstdint>

namespace sheetgrasp {

// Deterministic, platform-independent generator (splitmix64).  Standard
// <random> distributions are implementation-defined, which would break
// byte-identical reruns across toolchains; this keeps seeded sweeps and
// simulated traces reproducible everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform in [-half_width, half_width).
  double symmetric(double half_width) { return uniform(-half_width, half_width); }

 private:
  std::uint64_t state_;
};

// Stable sub-stream derivation, e.g. (seed, cell, trial) -> trial stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  SplitMix64 g(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xd1b54a32d192ed03ULL));
  return g.next_u64();
}

}  // namespace sheetgrasp
