#pragma once

#include <cmath>
#include <cstdint>

namespace chancode {

// Counter-friendly PRNG (SplitMix64). Used instead of <random> engines and
// distributions so that sampled outputs are bit-identical across platforms.
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

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // n is tiny here (outcome counts, design indices); modulo bias is < 2^-59.
    return next_u64() % n;
  }

  // Standard normal via Box-Muller.
  double next_gaussian() {
    double u = next_double();
    double v = next_double();
    while (u <= 0.0) u = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
  }

 private:
  std::uint64_t state_;
};

// Mixes a seed with stream indices, so independent streams (per round, per
// sweep point, per design element) can be derived from one user-facing seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  SplitMix64 mix(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL) ^
                 (c * 0x165667b19e3779f9ULL));
  return mix.next_u64();
}

}  // namespace chancode
