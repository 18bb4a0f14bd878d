#pragma once

#include <cstdint>

namespace proxy6 {

// Deterministic 64-bit generator (splitmix64 step function). Used everywhere
// instead of <random> so that identical seeds give identical runs regardless
// of platform or standard library. Byte-identical replay is a contract of the
// simulator, not a nice-to-have.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, bound). Lemire multiply-shift; bias is negligible for
  // the bounds used here and, more importantly, the result is reproducible.
  uint64_t next_below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Derive an independent stream from (seed, tag). Tags below keep the
  // simulator's random decisions on separate streams so that, e.g., changing
  // the loss rate does not perturb topology generation.
  static uint64_t mix(uint64_t seed, uint64_t tag) {
    Rng r(seed ^ (tag * 0x9e3779b97f4a7c15ull));
    r.next_u64();
    return r.next_u64();
  }

 private:
  uint64_t state_;
};

inline constexpr uint64_t kStreamTopology = 1;
inline constexpr uint64_t kStreamOrder = 2;
inline constexpr uint64_t kStreamLoss = 3;
inline constexpr uint64_t kStreamTentative = 4;
inline constexpr uint64_t kStreamJitter = 5;

}  // namespace proxy6
