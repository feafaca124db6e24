#ifndef HEISOT_BOX_HPP
#define HEISOT_BOX_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "heisot/group.hpp"
#include "heisot/random.hpp"

namespace heisot {

/// Axis-aligned box in the real coordinates (xi, eta, t) of H^n.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> lower, std::vector<double> upper) : lo(std::move(lower)), hi(std::move(upper)) {
    detail::require(lo.size() == hi.size() && lo.size() >= 3 && lo.size() % 2 == 1,
                    "box: bounds must have equal odd length 2n+1");
    for (std::size_t k = 0; k < lo.size(); ++k) detail::require(lo[k] <= hi[k], "box: lo must not exceed hi");
  }

  static Box cube(std::size_t n, double lower, double upper) {
    return Box(std::vector<double>(2 * n + 1, lower), std::vector<double>(2 * n + 1, upper));
  }

  /// Smallest box containing every point.
  static Box bounding(std::span<const Point> points) {
    detail::require(!points.empty(), "box: cannot bound an empty point set");
    std::vector<double> lo = points.front().coords(), hi = lo;
    for (const auto& p : points) {
      const auto c = p.coords();
      for (std::size_t k = 0; k < c.size(); ++k) {
        lo[k] = std::min(lo[k], c[k]);
        hi[k] = std::max(hi[k], c[k]);
      }
    }
    return Box(std::move(lo), std::move(hi));
  }

  [[nodiscard]] std::size_t dim() const { return lo.size(); }
  [[nodiscard]] std::size_t n() const { return (lo.size() - 1) / 2; }

  [[nodiscard]] double volume() const {
    double v = 1.0;
    for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
    return v;
  }

  [[nodiscard]] std::vector<double> center() const {
    std::vector<double> c(lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) c[k] = 0.5 * (lo[k] + hi[k]);
    return c;
  }

  [[nodiscard]] bool contains(const Point& p) const {
    if (p.ambient_dim() != dim()) return false;
    const auto c = p.coords();
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] < lo[k] || c[k] > hi[k]) return false;
    return true;
  }

  /// Grows every side by `fraction` of its width (and at least `min_pad`) on both ends.
  [[nodiscard]] Box inflated(double fraction, double min_pad = 0.0) const {
    Box b = *this;
    for (std::size_t k = 0; k < lo.size(); ++k) {
      const double pad = std::max(fraction * (hi[k] - lo[k]), min_pad);
      b.lo[k] -= pad;
      b.hi[k] += pad;
    }
    return b;
  }

  [[nodiscard]] Point sample(Rng& rng) const {
    std::vector<double> c(lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) c[k] = uniform(rng, lo[k], hi[k]);
    return Point::from_coords(c);
  }
};

}  // namespace heisot

#endif  // HEISOT_BOX_HPP
