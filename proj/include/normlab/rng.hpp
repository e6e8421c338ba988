#pragma once

#include <complex>
#include <cstdint>

namespace normlab {

// Deterministic cross-platform RNG. We do not use <random> distributions
// because their output is implementation-defined; report bytes must be
// reproducible from the seed alone.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::complex<double> complex_in_square(double half_side = 1.0) {
    double re = range(-half_side, half_side);
    double im = range(-half_side, half_side);
    return {re, im};
  }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
  std::uint64_t state_;
};

// Stable sub-seed derivation: independent streams for (seed, tag) pairs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  SplitMix64 mix(seed ^ (0xA5A5A5A55A5A5A5Aull + tag * 0x9E3779B97F4A7C15ull));
  mix.next();
  return mix.next();
}

}  // namespace normlab
