#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pagelen/hash.hpp"

namespace pagelen {

// Deterministic RNG used everywhere randomness exists. mt19937_64 has a
// standardized output sequence; the bounded/real/normal draws below avoid the
// unspecified std::*_distribution algorithms, so identical seeds give
// identical streams on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % bound;
  }

  // Uniform double in [0, 1) with 53 bits of randomness.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Box-Muller; one value per call, the twin is discarded for simplicity.
  double next_normal() {
    double u1 = next_double();
    while (u1 <= 1e-300) u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Stable derivation of per-worker seeds (e.g. one per forest tree).
  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    unsigned char buf[16];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(master >> (8 * i));
    for (int i = 0; i < 8; ++i) buf[8 + i] = static_cast<unsigned char>(stream >> (8 * i));
    return hash64(buf, sizeof buf, 0x5851f42d4c957f2dULL);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pagelen
