/**
 * @file random.hpp
 * @brief The generator behind every random instance and sampler in hvbox.
 *
 * SplitMix64: the state advances by 0x9E3779B97F4A7C15 per draw and each
 * output is the state passed through
 *
 *   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *   z =  z ^ (z >> 31)
 *
 * Doubles use the top 53 bits: ((x >> 11) + 0.5) * 2^-53, which lies in the
 * open interval (0, 1). Output is identical on every platform.
 */

#ifndef HVBOX_RANDOM_HPP
#define HVBOX_RANDOM_HPP

#include <cstdint>

namespace hvbox {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in the open interval (0, 1).
  double uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    const double x = lo + (hi - lo) * (static_cast<double>((*this)() >> 11) * 0x1.0p-53);
    return x < hi ? x : lo;
  }

  /// Integer in [0, n) by multiply-shift; n > 0.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

/// One SplitMix64 output for `seed`; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed) { return SplitMix64(seed)(); }

}  // namespace hvbox

#endif  // HVBOX_RANDOM_HPP
