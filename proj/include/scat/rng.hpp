// rng.hpp — deterministic counter-style random streams for reproducible placements.
//
// Every random draw is derived from (seed, stream labels) through SplitMix64, so a
// placement is a pure function of its seed regardless of evaluation order or threading.
#pragma once

#include <cstdint>

namespace scat {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// A small deterministic generator seeded from a root seed plus stream labels
// (e.g. cell index, obstacle slot). Draws are independent across distinct labels.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t label_a = 0, uint64_t label_b = 0) {
    // Mix the labels in one at a time; SplitMix64 acts as the mixing function.
    state_ = seed;
    (void)splitmix64(state_);
    state_ ^= 0xA5A5A5A55A5A5A5Aull ^ label_a;
    (void)splitmix64(state_);
    state_ ^= 0xC3C3C3C33C3C3C3Cull ^ label_b;
    (void)splitmix64(state_);
  }

  uint64_t next_u64() { return splitmix64(state_); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform double in [-amp, amp).
  double symmetric(double amp) { return uniform(-amp, amp); }

 private:
  uint64_t state_;
};

}  // namespace scat
