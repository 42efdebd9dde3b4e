#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace coflowsim {

/// SplitMix64 step; used to derive child seeds from a base seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Stable 64-bit mix of (base seed, a, b). Same inputs give the same seed on
/// every platform, which is what keeps sweep cells paired and reproducible.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

/// Deterministic sampling on top of mt19937_64. The transforms (53-bit
/// uniforms, Box-Muller normals, Fisher-Yates) are spelled out here instead of
/// going through <random> distributions, whose draw sequences differ between
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n); n must be positive.
  int uniform_int(int n) {
    int v = static_cast<int>(uniform01() * static_cast<double>(n));
    return v < n ? v : n - 1;
  }

  double normal(double mean, double sd);

  /// Normal draw clamped from below at `floor`; keeps sampled parameters
  /// (bandwidths, data sizes, release times) strictly positive.
  double truncated_normal(double mean, double sd, double floor);

  /// k distinct values from [0, n), in sampled order.
  std::vector<int> sample_distinct(int n, int k);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[static_cast<std::size_t>(i)],
                v[static_cast<std::size_t>(uniform_int(i + 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace coflowsim
