#pragma once

#include <cstdint>

namespace cznd {

// SplitMix64 in counter mode. Draw k of stream `seed` is
// mix64(seed + (k + 1) * golden_gamma), so any draw can be computed without
// generating the ones before it.
class CounterRng {
 public:
  static constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t bits(std::uint64_t index) const {
    return mix64(seed_ + (index + 1) * kGoldenGamma);
  }

  // Uniform on [0, 1) from the top 53 bits.
  constexpr double unit(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  constexpr double uniform(std::uint64_t index, double lo, double hi) const {
    return lo + (hi - lo) * unit(index);
  }

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace cznd
