#pragma once

// Portable pseudo-random generators. Both are fully specified by the
// constants below, so any implementation reproduces the same streams.

#include <cstdint>

namespace uasdetect {

// SplitMix64 (Steele, Lea, Flood). Used to derive well-mixed seeds.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stateless mix of a 64-bit value through one SplitMix64 round.
constexpr std::uint64_t mix64(std::uint64_t value) {
  std::uint64_t s = value;
  return splitmix64(s);
}

// xorshift64* (Vigna): shifts 12, 25, 27 and multiplier 0x2545F4914F6CDD1D.
class XorShift64Star {
 public:
  using result_type = std::uint64_t;

  // The seed is passed through SplitMix64 so that 0 and nearby seeds give
  // unrelated, nonzero states.
  explicit constexpr XorShift64Star(std::uint64_t seed) {
    std::uint64_t s = seed;
    state_ = splitmix64(s);
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  constexpr std::uint64_t operator()() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Approximately standard-normal variate: the sum of four 16-bit lanes of
  // one draw, centered and scaled to unit variance (Irwin-Hall, n = 4).
  // Bounded at about +/-3.46.
  constexpr double normal() {
    const std::uint64_t r = (*this)();
    const std::uint64_t sum = (r & 0xFFFF) + ((r >> 16) & 0xFFFF) +
                              ((r >> 32) & 0xFFFF) + ((r >> 48) & 0xFFFF);
    // Each lane is uniform on {0..65535}: mean 32767.5, variance
    // (65536^2 - 1) / 12.
    constexpr double kMean = 4 * 32767.5;
    constexpr double kInvStd = 1.0 / 37837.22723720648;  // sqrt(4 * (65536^2-1)/12)
    return (static_cast<double>(sum) - kMean) * kInvStd;
  }

 private:
  std::uint64_t state_ = 0;
};

}  // namespace uasdetect
