#pragma once

#include <array>
#include <cstdint>

namespace splitrisk {

// splitmix64 step; used for seeding and for mixing seed material.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stable 64-bit mix of (master seed, grid index, replicate index).
// Every Monte Carlo replicate derives its generator from this, which makes
// results independent of worker count and replayable from the manifest.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t grid,
                              std::uint64_t replicate) {
  std::uint64_t s = master;
  s ^= splitmix64_next(grid);
  s ^= splitmix64_next(replicate);
  std::uint64_t out = s;
  return splitmix64_next(out);
}

// xoshiro256++ with splitmix64 state expansion. Self-contained so that
// streams are bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
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

  // Uniform double strictly inside (0,1): 2^53 equally spaced midpoints.
  // Never returns 0 or 1, so quantile transforms of unbounded families are safe.
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace splitrisk
