// mhdpol - tiny deterministic generator for seeded sampling (SplitMix64);
// pinned arithmetic keeps reports reproducible for a given seed

#ifndef MHDPOL_RNG_HPP_
#define MHDPOL_RNG_HPP_

#include <cmath>
#include <cstdint>

#include "mhdpol/linalg.hpp"

namespace mhdpol {

struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}

  std::uint64_t next_u64() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }
  double uniform(double a, double b) { return a + (b - a) * next_unit(); }
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }
  double sign() { return (next_u64() & 1ULL) ? 1.0 : -1.0; }

  Vec3 unit_vec3() {
    // Rejection-free: normalize a Gaussian-ish triple made from sums.
    while (true) {
      const Vec3 v = {next_symmetric(), next_symmetric(), next_symmetric()};
      const double n = norm(v);
      if (n > 1e-3 && n <= 1.0) return (1.0 / n) * v;
    }
  }
};

}  // namespace mhdpol

#endif  // MHDPOL_RNG_HPP_
