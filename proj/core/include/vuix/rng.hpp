#pragma once

#include <cstdint>

namespace vuix {

/// SplitMix64 pseudo-random generator (Steele, Lea & Flood, "Fast Splittable
/// Pseudorandom Number Generators", OOPSLA 2014).
///
/// The generator is counter-based: starting from state s0 = seed, output t is
///     mix64(s0 + (t + 1) * 0x9E3779B97F4A7C15)
/// with the finalizer
///     z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
///     z ^= z >> 27;  z *= 0x94D049BB133111EB;
///     z ^= z >> 31;
/// so any implementation of the same recurrence reproduces the stream
/// bit-for-bit from the seed alone. Known-answer vectors live in the tests.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  /// Finalizer applied to the advanced state.
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() noexcept { return mix(state_ += 0x9E3779B97F4A7C15ULL); }

  /// Uniform integer in [0, bound). Uses rejection sampling so every value is
  /// exactly equally likely; bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    // Accept r >= 2^64 mod bound; the accepted range has size k*bound.
    const std::uint64_t min_accept = (0 - bound) % bound;
    std::uint64_t r = next();
    while (r < min_accept) r = next();
    return r % bound;
  }

  /// Seed for an independent substream: stream t of a master seed is defined
  /// as the (t+1)-th raw output of SplitMix64(seed). Used to give each
  /// Monte-Carlo trial its own deterministic generator.
  static std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
  }

 private:
  std::uint64_t state_;
};

}  // namespace vuix
