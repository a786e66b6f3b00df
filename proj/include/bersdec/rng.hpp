#pragma once

#include <cstdint>

namespace bersdec {

// SplitMix64 (Steele, Lea, Flood; public-domain reference algorithm).
// Chosen for bit-exact reproducibility across platforms: every draw is a
// pure function of the 64-bit state, with no implementation-defined
// behavior, so seeded runs produce identical streams everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), using the top 53 bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform integer in [0, n), via 128-bit multiply-shift (deterministic,
  // negligible bias for the small n used here).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_ = 0;
};

}  // namespace bersdec
