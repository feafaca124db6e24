#ifndef HEISOT_GEODESIC_HPP
#define HEISOT_GEODESIC_HPP

// Minimal curves of the Carnot-Caratheodory metric on H^n.
//
// The minimal curves leaving the identity are
//   sigma_{chi,phi}(s) = [ i (e^{-i phi s} - 1) chi / phi,  2 |chi|^2 (phi s - sin(phi s)) / phi^2 ]
// with chi in C^n \ {0}, phi in [-2pi, 2pi], and sigma_{chi,0}(s) = [chi s, 0].
// The endpoint map (chi, phi) -> sigma_{chi,phi}(1) is a diffeomorphism from
// (C^n \ {0}) x (-2pi, 2pi) onto H^n \ L, and |chi| = d(0, sigma(1)).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "heisot/group.hpp"

namespace heisot {

struct GeodesicParam {
  CVector chi;
  double phi = 0.0;
};

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Below this |phi s| the closed forms are replaced by their Taylor expansions.
inline constexpr double kSeriesSwitch = 1e-4;

/// i (e^{-ia} - 1) / a, continuous at a = 0 with value 1.
inline Complex horizontal_factor(double a) {
  if (std::abs(a) < kSeriesSwitch) {
    const double a2 = a * a;
    return {1.0 - a2 / 6.0 + a2 * a2 / 120.0, -a / 2.0 + a2 * a / 24.0};
  }
  const double sh = std::sin(a / 2.0);
  return {std::sin(a) / a, -2.0 * sh * sh / a};
}

/// (a - sin a) / a^2, continuous at a = 0 with value 0.
inline double vertical_factor(double a) {
  if (std::abs(a) < kSeriesSwitch) {
    const double a2 = a * a;
    return a / 6.0 - a2 * a / 120.0 + a2 * a2 * a / 5040.0;
  }
  return (a - std::sin(a)) / (a * a);
}

/// a - sin a without cancellation for small a.
inline double a_minus_sin(double a) {
  if (std::abs(a) < 0.1) {
    const double a2 = a * a;
    // a^3/3! - a^5/5! + ... through a^13
    double term = a * a2 / 6.0;
    double sum = term;
    for (int k = 5; k <= 13; k += 2) {
      term *= -a2 / static_cast<double>((k - 1) * k);
      sum += term;
    }
    return sum;
  }
  return a - std::sin(a);
}

/// An angle in [0, 2pi) stored together with its distance to 2pi so that
/// quantities that blow up at 2pi stay accurate.
struct Angle {
  double phi = 0.0;       // in [0, 2pi)
  double gap = kTwoPi;    // 2pi - phi, exact when the angle was solved near 2pi
  double sin_phi = 0.0;
  double sin_half = 0.0;  // sin(phi / 2) = sin(gap / 2) >= 0

  static Angle from_phi(double p) {
    return Angle{p, kTwoPi - p, std::sin(p), std::sin(p / 2.0)};
  }
  static Angle from_gap(double g) {
    return Angle{kTwoPi - g, g, -std::sin(g), std::sin(g / 2.0)};
  }

  /// (phi - sin phi) / (1 - cos phi): the ratio t / |zeta|^2 of sigma_{chi,phi}(1).
  [[nodiscard]] double ratio() const {
    if (phi < kSeriesSwitch) return phi / 3.0 + phi * phi * phi / 90.0;
    const double num = (gap < 0.1) ? (kTwoPi - gap + std::sin(gap)) : a_minus_sin(phi);
    return num / (2.0 * sin_half * sin_half);
  }

  /// |i (e^{-i phi} - 1) / phi| = 2 sin(phi/2) / phi.
  [[nodiscard]] double horizontal_gain() const {
    if (phi < kSeriesSwitch) return 1.0 - phi * phi / 24.0;
    return 2.0 * sin_half / phi;
  }

  /// i (e^{-i phi} - 1) / phi.
  [[nodiscard]] Complex horizontal_factor() const {
    if (phi < kSeriesSwitch) return detail::horizontal_factor(phi);
    return {sin_phi / phi, -2.0 * sin_half * sin_half / phi};
  }
};

/// Solves (phi - sin phi) / (1 - cos phi) = ratio for phi in [0, 2pi), ratio >= 0.
/// The left-hand side is strictly increasing, equal to 0 at 0 and unbounded at 2pi.
inline Angle solve_ratio(double ratio) {
  if (ratio <= 0.0) return Angle::from_phi(0.0);
  const auto tol = [](double a, double b) {
    return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::min(std::abs(a), std::abs(b));
  };
  std::uintmax_t iters = 200;
  const double mid_ratio = std::numbers::pi / 2.0;  // value at phi = pi
  if (ratio <= mid_ratio) {
    auto g = [ratio](double p) { return Angle::from_phi(p).ratio() - ratio; };
    if (g(std::numbers::pi) == 0.0) return Angle::from_phi(std::numbers::pi);
    // Small ratios: phi ~ 3 ratio; start the bracket there to keep the relative tolerance meaningful.
    double lo = std::min(std::numbers::pi, 2.0 * ratio);
    while (lo > 0.0 && g(lo) > 0.0) lo *= 0.5;
    if (lo <= 0.0 || g(lo) == 0.0) return Angle::from_phi(lo);
    const auto r = boost::math::tools::toms748_solve(g, lo, std::numbers::pi, tol, iters);
    return Angle::from_phi(0.5 * (r.first + r.second));
  }
  // Near 2pi solve for the gap 2pi - phi in (0, pi]; the ratio decreases in the gap.
  auto g = [ratio](double gap) { return Angle::from_gap(gap).ratio() - ratio; };
  double lo = std::min(std::numbers::pi, std::sqrt(4.0 * std::numbers::pi / ratio));
  while (lo > std::numeric_limits<double>::min() && g(lo) < 0.0) lo *= 0.5;
  if (g(lo) == 0.0) return Angle::from_gap(lo);
  if (g(lo) < 0.0) return Angle::from_gap(lo);  // beyond double range: pinned next to 2pi
  const auto r = boost::math::tools::toms748_solve(g, lo, std::numbers::pi, tol, iters);
  return Angle::from_gap(0.5 * (r.first + r.second));
}

/// Solved polar data of a point off the center: |phi|, its sign and |zeta|.
struct Polar {
  Angle angle;
  double sign = 1.0;
  double zeta_norm = 0.0;
};

inline Polar polar(const Point& z) {
  const double zn = norm(z.zeta);
  const double r = z.t / (zn * zn);
  Polar p;
  p.zeta_norm = zn;
  p.sign = (r < 0.0) ? -1.0 : 1.0;
  p.angle = solve_ratio(std::abs(r));
  return p;
}

}  // namespace detail

/// sigma_{chi,phi}(s), the point reached at time s along the minimal curve from the identity.
inline Point exp_geodesic(const GeodesicParam& p, double s) {
  const double a = p.phi * s;
  const Complex h = detail::horizontal_factor(a);
  Point out;
  out.zeta.resize(p.chi.size());
  for (std::size_t j = 0; j < p.chi.size(); ++j) out.zeta[j] = p.chi[j] * s * h;
  const double c = norm(p.chi);
  out.t = 2.0 * c * c * s * s * detail::vertical_factor(a);
  return out;
}

/// Inverse of (chi, phi) -> sigma_{chi,phi}(1) on H^n \ L.
inline GeodesicParam log_geodesic(const Point& z, double tol = kOmegaTolerance) {
  detail::require(z.is_finite(), "log_geodesic: non-finite point");
  detail::require(norm(z.zeta) > tol, "log_geodesic: point lies on the center L; minimal curve is not unique");
  const detail::Polar pol = detail::polar(z);
  Complex h = pol.angle.horizontal_factor();
  // phi -> -phi conjugates the factor.
  if (pol.sign < 0.0) h = std::conj(h);
  GeodesicParam g;
  g.phi = pol.sign * pol.angle.phi;
  g.chi.resize(z.n());
  for (std::size_t j = 0; j < z.n(); ++j) g.chi[j] = z.zeta[j] / h;
  return g;
}

/// Carnot-Caratheodory distance from the identity.
inline double cc_norm(const Point& z, double tol = kOmegaTolerance) {
  const double zn = norm(z.zeta);
  if (zn <= tol) return std::sqrt(std::numbers::pi * std::abs(z.t));
  const detail::Polar pol = detail::polar(z);
  return zn / pol.angle.horizontal_gain();
}

inline double cc_distance(const Point& x, const Point& y) { return cc_norm(relative(x, y)); }

/// Cheap lower bound on d(x, y); used to prune distance searches.
inline double cc_distance_lower_bound(const Point& x, const Point& y) {
  const Point z = relative(x, y);
  // |zeta| <= d and |t| <= 2 max_phi[(phi - sin phi)/phi^2] d^2 < 0.6371 d^2.
  return std::max(norm(z.zeta), std::sqrt(std::abs(z.t) / 0.6371));
}

/// A minimal curve s -> base . sigma_{chi,phi}(s) on [0, 1].
struct MinimalCurve {
  Point base;
  GeodesicParam params;
  bool degenerate = false;
  /// Set when the endpoints differ by an element of the center and the canonical curve was chosen.
  bool center_selection = false;

  [[nodiscard]] Point eval(double s) const {
    if (degenerate) return base;
    return mul(base, exp_geodesic(params, s));
  }
  [[nodiscard]] double length() const { return degenerate ? 0.0 : norm(params.chi); }
};

/// The selected minimal curve between x and y: unique on Omega; on the center the
/// canonical curve chi = sqrt(pi |t|) e_1, phi = sign(t) 2pi; constant when x = y.
inline MinimalCurve minimal_curve(const Point& x, const Point& y) {
  detail::require(x.n() == y.n(), "minimal_curve: dimension mismatch");
  MinimalCurve c;
  c.base = x;
  const Point z = relative(x, y);
  if (norm(z.zeta) > kOmegaTolerance) {
    c.params = log_geodesic(z);
    return c;
  }
  if (z.t == 0.0) {
    c.degenerate = true;
    c.params.chi.assign(x.n(), Complex(0.0, 0.0));
    return c;
  }
  c.center_selection = true;
  c.params.chi.assign(x.n(), Complex(0.0, 0.0));
  c.params.chi[0] = std::sqrt(std::numbers::pi * std::abs(z.t));
  c.params.phi = (z.t > 0.0 ? 1.0 : -1.0) * detail::kTwoPi;
  return c;
}

/// (e_s o S)(x, y): the point at distance s d(x, y) from x on the selected curve.
inline Point eval_curve(const Point& x, const Point& y, double s) {
  detail::require(s >= 0.0 && s <= 1.0, "eval_curve: s must lie in [0, 1]");
  if (s == 0.0) return x;
  if (s == 1.0) return y;
  return minimal_curve(x, y).eval(s);
}

struct DistanceGradient {
  CVector horizontal;  // (X_j d + i Y_j d)_j
  double vertical = 0.0;  // T d
};

/// Gradient of d_y = d(., y) at x, for x off the center line L_y through y.
inline DistanceGradient grad_distance(const Point& x, const Point& y) {
  const Point z = relative(y, x);
  detail::require(norm(z.zeta) > kOmegaTolerance, "grad_distance: x lies on L_y where d_y is not smooth");
  const GeodesicParam g = log_geodesic(z);
  const double len = norm(g.chi);
  const Complex rot = std::polar(1.0, -g.phi);
  DistanceGradient out;
  out.horizontal.resize(g.chi.size());
  for (std::size_t j = 0; j < g.chi.size(); ++j) out.horizontal[j] = g.chi[j] / len * rot;
  out.vertical = g.phi / (4.0 * len);
  return out;
}

}  // namespace heisot

#endif  // HEISOT_GEODESIC_HPP
