#pragma once

#include <cstdint>

namespace pencillab {

// splitmix64 (Steele/Lea/Flood). One 64-bit word of state; identical streams
// for identical seeds on every platform, which the reporting layer relies on.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * (0xffffffffffffffffull / n);
    for (;;) {
      std::uint64_t v = next();
      if (v < limit) return v % n;
    }
  }

  // Uniform integer in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace pencillab
