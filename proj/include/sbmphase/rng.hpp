#pragma once

#include <cstdint>
#include <initializer_list>

namespace sbmphase {

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive key combiner for deriving independent RNG streams:
// hash_mix({a, b}) and hash_mix({b, a}) differ.
constexpr std::uint64_t hash_mix(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t v : parts) h = mix64(h ^ (v + 0x9e3779b97f4a7c15ULL));
  return h;
}

// Counter-based generator: each output is the finalizer applied to an
// additive counter, so distinctly seeded streams never interleave state.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random mantissa bits. A strict `u < p`
  // comparison therefore realizes p = 0 as "never" and p = 1 as "always".
  constexpr double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace sbmphase
