#ifndef HEISOT_RANDOM_HPP
#define HEISOT_RANDOM_HPP

#include <cstdint>
#include <random>

#include "heisot/group.hpp"

namespace heisot {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Point with every real coordinate uniform in [-half_width, half_width].
inline Point random_point(Rng& rng, std::size_t n, double half_width) {
  Point p = Point::identity(n);
  for (auto& z : p.zeta) z = Complex(uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width));
  p.t = uniform(rng, -half_width, half_width);
  return p;
}

}  // namespace heisot

#endif  // HEISOT_RANDOM_HPP
