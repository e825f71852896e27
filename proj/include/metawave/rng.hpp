#pragma once

#include <cmath>
#include <cstdint>

namespace metawave {

// Small counter-friendly generator with a fixed, platform-independent
// sequence, so stored seeds reproduce results bit-for-bit anywhere.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1]: never zero, safe under log().
  double uniform_pos() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }
};

// Independent stream for a (seed, index) pair: work items can be processed
// in any order, or in parallel, without sharing generator state.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix{seed};
  const std::uint64_t a = mix.next();
  mix.state = index ^ 0xD2B74407B1CE6E93ull;
  const std::uint64_t b = mix.next();
  return SplitMix64{a ^ (b + 0x9E3779B97F4A7C15ull * index)};
}

// Standard-normal deviates via the Box-Muller transform (explicit
// implementation keeps the sequence identical across standard libraries).
struct GaussianStream {
  SplitMix64 rng;
  bool has_spare = false;
  double spare = 0.0;

  explicit GaussianStream(SplitMix64 r) : rng(r) {}

  double next() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    const double u1 = rng.uniform_pos();
    const double u2 = rng.uniform_pos();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare = radius * std::sin(angle);
    has_spare = true;
    return radius * std::cos(angle);
  }
};

}  // namespace metawave
