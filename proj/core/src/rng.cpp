#include "coflowsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coflowsim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (b + 0xd1b54a32d192ed03ULL));
  return h;
}

double Rng::normal(double mean, double sd) {
  // Box-Muller, cosine branch only; no cached spare so the draw count per
  // call is fixed.
  double u1 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = uniform01();
  const double z =
      std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + sd * z;
}

double Rng::truncated_normal(double mean, double sd, double floor) {
  return std::max(normal(mean, sd), floor);
}

std::vector<int> Rng::sample_distinct(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("sample_distinct: k out of range");
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + uniform_int(n - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace coflowsim
