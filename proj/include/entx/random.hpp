#pragma once

// Counter-derived random streams for the phase-averaging estimator.
//
// Generator: SplitMix64 (Steele, Lea, Flood 2014). Each sample owns an
// independent stream whose state is mix(seed ^ mix(sample_index)), so an
// estimate is bit-identical no matter how samples are scheduled.

#include <cstdint>
#include <numbers>

namespace entx {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform phase on [0, 2 pi).
  constexpr double phase() { return 2.0 * std::numbers::pi * uniform(); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline constexpr SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t sample) {
  return SplitMix64(seed ^ SplitMix64::mix(sample + 0x632BE59BD9B4E019ULL));
}

}  // namespace entx
