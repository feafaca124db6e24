#ifndef HEISOT_GROUP_HPP
#define HEISOT_GROUP_HPP

// Heisenberg group H^n realised as C^n x R with the twisted product
//   [z, t] . [z', t'] = [z + z', t + t' + 2 sum_j Im(z_j conj(z'_j))].

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "heisot/error.hpp"

namespace heisot {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Element [zeta, t] of H^n. The dimension index n is zeta.size().
struct Point {
  CVector zeta;
  double t = 0.0;

  Point() = default;
  Point(CVector z, double vertical) : zeta(std::move(z)), t(vertical) {}

  /// Identity element of H^n.
  static Point identity(std::size_t n) { return Point(CVector(n, Complex(0.0, 0.0)), 0.0); }

  /// Builds a point from real coordinates (xi_1..xi_n, eta_1..eta_n, t).
  static Point from_coords(std::span<const double> coords) {
    detail::require(coords.size() >= 3 && coords.size() % 2 == 1,
                    "point coordinates must have odd length 2n+1 >= 3");
    const std::size_t n = (coords.size() - 1) / 2;
    CVector z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = Complex(coords[j], coords[n + j]);
    return Point(std::move(z), coords[2 * n]);
  }

  [[nodiscard]] std::size_t n() const { return zeta.size(); }
  [[nodiscard]] std::size_t ambient_dim() const { return 2 * zeta.size() + 1; }

  /// Real coordinates (xi_1..xi_n, eta_1..eta_n, t).
  [[nodiscard]] std::vector<double> coords() const {
    const std::size_t n = zeta.size();
    std::vector<double> c(2 * n + 1);
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = zeta[j].real();
      c[n + j] = zeta[j].imag();
    }
    c[2 * n] = t;
    return c;
  }

  [[nodiscard]] bool is_finite() const {
    if (!std::isfinite(t)) return false;
    for (const auto& z : zeta)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean norm |z| of a complex vector.
inline double norm(const CVector& z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

/// Largest coordinate difference; used for exact-duplicate detection.
inline double max_coord_diff(const Point& a, const Point& b) {
  double m = std::abs(a.t - b.t);
  for (std::size_t j = 0; j < a.zeta.size(); ++j) m = std::max(m, std::abs(a.zeta[j] - b.zeta[j]));
  return m;
}

inline Point mul(const Point& x, const Point& y) {
  detail::require(x.n() == y.n(), "mul: dimension mismatch");
  Point r;
  r.zeta.resize(x.n());
  double twist = 0.0;
  for (std::size_t j = 0; j < x.n(); ++j) {
    r.zeta[j] = x.zeta[j] + y.zeta[j];
    twist += (x.zeta[j] * std::conj(y.zeta[j])).imag();
  }
  r.t = x.t + y.t + 2.0 * twist;
  return r;
}

inline Point inv(const Point& x) {
  Point r;
  r.zeta.resize(x.n());
  for (std::size_t j = 0; j < x.n(); ++j) r.zeta[j] = -x.zeta[j];
  r.t = -x.t;
  return r;
}

/// Anisotropic dilation delta_r([z, t]) = [r z, r^2 t].
inline Point dilate(double r, const Point& x) {
  detail::require(r > 0.0 && std::isfinite(r), "dilate: factor must be positive");
  Point out = x;
  for (auto& z : out.zeta) z *= r;
  out.t *= r * r;
  return out;
}

/// Left difference x^{-1} . y, the displacement seen from x.
inline Point relative(const Point& x, const Point& y) { return mul(inv(x), y); }

/// Absolute tolerance on |zeta| below which a point counts as lying on the center L.
inline constexpr double kOmegaTolerance = 1e-10;

/// True iff x^{-1} y is off the center L, i.e. the minimal curve from x to y is unique.
inline bool is_in_omega(const Point& x, const Point& y, double tol = kOmegaTolerance) {
  return norm(relative(x, y).zeta) > tol;
}

}  // namespace heisot

#endif  // HEISOT_GROUP_HPP
