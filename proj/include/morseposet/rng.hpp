#pragma once

#include <cstdint>

namespace morseposet {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based uniform stream (SplitMix64 output function). Any draw is
// addressable as (seed, counter), so parallel consumers can regenerate the
// exact same values regardless of evaluation order or thread schedule.
inline std::uint64_t stream_bits(std::uint64_t seed, std::uint64_t counter) {
  return detail::mix64(seed + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

// Uniform in [0, 1), 53 mantissa bits.
inline double stream_unit(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(stream_bits(seed, counter) >> 11) * 0x1.0p-53;
}

// Sequential convenience wrapper over the counter stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t start = 0)
      : seed_(seed), counter_(start) {}

  std::uint64_t bits() { return stream_bits(seed_, counter_++); }
  double unit() { return stream_unit(seed_, counter_++); }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Uniform integer in [0, n); n must be positive. Modulo bias is
  // irrelevant at the n used here (tiny against 2^64).
  std::uint64_t below(std::uint64_t n) { return bits() % n; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace morseposet
