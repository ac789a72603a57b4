#pragma once

#include <cstdint>
#include <limits>

namespace sidon {

/// SplitMix64 generator.
///
/// Every randomized routine in the library draws from this generator so that
/// keys and experiments are bit-exactly reproducible from a 64-bit seed.
/// Uniform draws below a bound use rejection sampling (no modulo bias).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream number `index` derived from `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    return SplitMix64(mixer());
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). `bound` must be nonzero.
  std::uint64_t uniform(std::uint64_t bound) {
    // Largest multiple of bound representable in 64 bits, computed mod 2^64.
    const std::uint64_t reject_below = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = (*this)();
      if (x >= reject_below) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace sidon
