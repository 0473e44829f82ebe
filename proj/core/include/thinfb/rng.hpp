#pragma once
// Deterministic 64-bit generator (splitmix-style) used for every seeded
// choice in the artifact.  The state transition is fixed and documented so
// that all published numbers are bit-reproducible:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB;  output z ^ (z >> 31)
// uniform doubles are output / 2^64.

#include <cstdint>

namespace thinfb {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64()) * 0x1.0p-64;
  }

 private:
  std::uint64_t state_;
};

}  // namespace thinfb
