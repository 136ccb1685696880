#pragma once
//
// Seeding contract. Every random stream in the library is a std::mt19937_64
// seeded with
//
//   sub_seed(master, index) = splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15)
//
// where splitmix64 is the standard finalizer (Steele, Lea, Flood 2014). Restart
// k of a search with master seed s draws its start point from sub_seed(s, k),
// so results never depend on worker count or scheduling.
//

#include <cmath>
#include <cstdint>
#include <random>

#include "uent/subspace.hpp"

namespace uent {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

using Rng = std::mt19937_64;

/// Independent standard complex Gaussians, E|z|^2 = 1.
inline CVector complex_gaussian(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, kInvSqrt2);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = {re, im};
  }
  return v;
}

/// Uniform (unitarily invariant) point on the unit sphere of C^n.
inline CVector random_unit_vector(Rng& rng, Eigen::Index n) {
  CVector v;
  do {
    v = complex_gaussian(rng, n);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

}  // namespace uent
