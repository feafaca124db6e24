#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "heisot/geodesic.hpp"
#include "heisot/random.hpp"

namespace heisot {
namespace {

constexpr double kPi = std::numbers::pi;

Point p1(double xi, double eta, double t) { return Point({Complex(xi, eta)}, t); }

GeodesicParam random_param(Rng& rng, std::size_t n, double phi_limit) {
  GeodesicParam g;
  g.chi.resize(n);
  for (auto& c : g.chi) c = Complex(uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5));
  g.phi = uniform(rng, -phi_limit, phi_limit);
  return g;
}

// Random pair (x, y) with x^{-1} y comfortably off the center.
std::pair<Point, Point> random_omega_pair(Rng& rng, std::size_t n) {
  for (;;) {
    Point x = random_point(rng, n, 2.0);
    Point y = random_point(rng, n, 2.0);
    if (norm(relative(x, y).zeta) > 1e-3) return {x, y};
  }
}

TEST(ExpGeodesic, StraightCaseAndStart) {
  const GeodesicParam straight{{Complex(1, 0)}, 0.0};
  EXPECT_EQ(exp_geodesic(straight, 0.5), p1(0.5, 0, 0));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const GeodesicParam g = random_param(rng, 2, 2 * kPi);
    EXPECT_EQ(exp_geodesic(g, 0.0), Point::identity(2));
  }
}

TEST(ExpGeodesic, FullTwistReachesCenter) {
  // (e^{-2 pi i} - 1) = 0 and 2 (2pi - 0) / (2pi)^2 = 1/pi
  const Point z = exp_geodesic({{Complex(1, 0)}, 2 * kPi}, 1.0);
  EXPECT_NEAR(std::abs(z.zeta[0]), 0.0, 1e-15);
  EXPECT_NEAR(z.t, 1.0 / kPi, 1e-15);
}

TEST(ExpGeodesic, SeriesBranchIsContinuous) {
  const GeodesicParam below{{Complex(0.7, -0.2)}, 0.999e-4};
  const GeodesicParam above{{Complex(0.7, -0.2)}, 1.001e-4};
  const Point a = exp_geodesic(below, 1.0);
  const Point b = exp_geodesic(above, 1.0);
  EXPECT_LE(max_coord_diff(a, b), 1e-7);
  // (phi - sin phi)/phi^2 ~ phi/6 so t ~ 2|chi|^2 phi / 6
  EXPECT_NEAR(a.t / (2 * 0.53 * 0.999e-4 / 6.0), 1.0, 1e-6);
}

TEST(LogGeodesic, InvertsStraightCurve) {
  const GeodesicParam g = log_geodesic(p1(1, 0, 0));
  EXPECT_NEAR(g.phi, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.chi[0] - Complex(1, 0)), 0.0, 1e-15);
}

TEST(LogGeodesic, RoundTripOnParameterSpace) {
  Rng rng(2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + i % 2;
    const GeodesicParam g = random_param(rng, n, 2 * kPi - 0.01);
    const GeodesicParam back = log_geodesic(exp_geodesic(g, 1.0));
    double err = std::abs(back.phi - g.phi);
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(back.chi[j] - g.chi[j]));
    worst = std::max(worst, err);
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(LogGeodesic, RoundTripOnPoints) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Point z = random_point(rng, 1 + i % 2, 3.0);
    if (norm(z.zeta) < 1e-3) continue;
    const Point back = exp_geodesic(log_geodesic(z), 1.0);
    EXPECT_LE(max_coord_diff(back, z), 1e-8);
  }
}

TEST(LogGeodesic, TwistGrowsWithHeight) {
  double prev = 0.0;
  for (double t : {0.1, 0.5, 1.0, 3.0, 10.0, 100.0}) {
    const double phi = log_geodesic(p1(1, 0, t)).phi;
    EXPECT_GT(phi, prev);
    EXPECT_LT(phi, 2 * kPi);
    prev = phi;
  }
  EXPECT_GT(log_geodesic(p1(1, 0, 10)).phi, log_geodesic(p1(1, 0, 1)).phi);
  EXPECT_NEAR(log_geodesic(p1(1, 0, -1)).phi, -log_geodesic(p1(1, 0, 1)).phi, 1e-14);
}

TEST(LogGeodesic, RejectsCenter) {
  EXPECT_THROW(log_geodesic(p1(0, 0, 1)), ValidationError);
  EXPECT_THROW(log_geodesic(Point::identity(1)), ValidationError);
}

TEST(Distance, ClosedForms) {
  EXPECT_NEAR(cc_distance(Point::identity(1), p1(1, 0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(cc_distance(Point::identity(1), p1(0, 0, 4)), std::sqrt(4 * kPi), 1e-12);
  EXPECT_NEAR(cc_distance(Point::identity(1), p1(0, 0, 4)), 3.5449077, 1e-7);
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Point z(CVector{Complex(uniform(rng, -3, 3), uniform(rng, -3, 3))}, 0.0);
    EXPECT_NEAR(cc_norm(z), norm(z.zeta), 1e-10);
    const double t = uniform(rng, -5, 5);
    EXPECT_NEAR(cc_norm(p1(0, 0, t)), std::sqrt(kPi * std::abs(t)), 1e-10);
  }
}

TEST(Distance, ContinuousAcrossCenterThreshold) {
  for (double t : {0.01, 1.0, 7.0}) {
    const double on = cc_norm(p1(0, 0, t));
    for (double eps : {2e-10, 1e-9, 1e-8}) {
      // d is 1-Lipschitz and d([eps, t], [0, t]) = eps, so any jump beyond eps is numerical
      EXPECT_NEAR(cc_norm(p1(eps, 0, t)), on, eps + 1e-12) << "eps=" << eps << " t=" << t;
      EXPECT_NEAR(cc_norm(p1(0, -eps, -t)), on, eps + 1e-12);
    }
  }
}

TEST(Distance, MetricAxiomsAndInvariance) {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + i % 2;
    const Point x = random_point(rng, n, 2.0);
    const Point y = random_point(rng, n, 2.0);
    const Point z = random_point(rng, n, 2.0);
    const Point g = random_point(rng, n, 2.0);
    const double dxy = cc_distance(x, y);
    EXPECT_EQ(cc_distance(x, x), 0.0);
    EXPECT_NEAR(dxy, cc_distance(y, x), 1e-9);
    EXPECT_LE(cc_distance(x, z), dxy + cc_distance(y, z) + 1e-9);
    EXPECT_NEAR(cc_distance(mul(g, x), mul(g, y)), dxy, 1e-9);
    const double r = uniform(rng, 0.2, 3.0);
    EXPECT_NEAR(cc_distance(dilate(r, x), dilate(r, y)), r * dxy, 1e-9 * (1 + r));
  }
}

TEST(MinimalCurve, Selections) {
  const MinimalCurve straight = minimal_curve(Point::identity(1), p1(1, 0, 0));
  EXPECT_FALSE(straight.degenerate);
  EXPECT_NEAR(straight.params.phi, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(straight.params.chi[0] - Complex(1, 0)), 0.0, 1e-15);

  const Point x = p1(0.4, 1.1, -0.3);
  const MinimalCurve stay = minimal_curve(x, x);
  EXPECT_TRUE(stay.degenerate);
  for (double s : {0.0, 0.3, 1.0}) EXPECT_EQ(stay.eval(s), x);

  // exp_geodesic(e1, 2pi, 1) = [0, 1/pi]
  const MinimalCurve center = minimal_curve(Point::identity(1), p1(0, 0, 1.0 / kPi));
  EXPECT_TRUE(center.center_selection);
  EXPECT_NEAR(std::abs(center.params.chi[0] - Complex(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(center.params.phi, 2 * kPi, 0.0);
  EXPECT_LE(max_coord_diff(center.eval(1.0), p1(0, 0, 1.0 / kPi)), 1e-15);
  const MinimalCurve down = minimal_curve(x, mul(x, p1(0, 0, -2.0)));
  EXPECT_NEAR(down.params.phi, -2 * kPi, 0.0);
  EXPECT_LE(max_coord_diff(down.eval(1.0), mul(x, p1(0, 0, -2.0))), 1e-14);
  EXPECT_NEAR(down.length(), std::sqrt(2 * kPi), 1e-14);
}

TEST(EvalCurve, EndpointsAndConstantSpeed) {
  EXPECT_EQ(eval_curve(Point::identity(1), p1(1, 0, 0), 0.5), p1(0.5, 0, 0));
  EXPECT_THROW(eval_curve(Point::identity(1), p1(1, 0, 0), 1.5), ValidationError);
  EXPECT_THROW(eval_curve(Point::identity(1), p1(1, 0, 0), -0.1), ValidationError);
  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const auto [x, y] = random_omega_pair(rng, 1 + i % 2);
    const MinimalCurve c = minimal_curve(x, y);
    EXPECT_LE(max_coord_diff(c.eval(1.0), y), 1e-8);
    EXPECT_EQ(eval_curve(x, y, 0.0), x);
    EXPECT_EQ(eval_curve(x, y, 1.0), y);
    const double d = cc_distance(x, y);
    EXPECT_NEAR(c.length(), d, 1e-9);
    const double s = uniform(rng, 0.0, 1.0);
    const double s2 = uniform(rng, s, 1.0);
    EXPECT_NEAR(cc_distance(x, eval_curve(x, y, s)), s * d, 1e-6);
    EXPECT_NEAR(cc_distance(eval_curve(x, y, s), eval_curve(x, y, s2)), (s2 - s) * d, 1e-6);
  }
}

TEST(EvalCurve, CenterCurveHasConstantSpeed) {
  const Point x = p1(0.2, 0.1, 0.0);
  const Point y = mul(x, p1(0, 0, 3.0));
  const double d = cc_distance(x, y);
  EXPECT_NEAR(d, std::sqrt(3 * kPi), 1e-12);
  for (double s : {0.1, 0.25, 0.5, 0.9}) {
    EXPECT_NEAR(cc_distance(x, eval_curve(x, y, s)), s * d, 1e-6);
    EXPECT_NEAR(cc_distance(eval_curve(x, y, s), y), (1 - s) * d, 1e-6);
  }
}

TEST(GradDistance, StraightCase) {
  const DistanceGradient g = grad_distance(p1(1, 0, 0), Point::identity(1));
  EXPECT_NEAR(std::abs(g.horizontal[0] - Complex(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(g.vertical, 0.0, 1e-15);
  EXPECT_THROW(grad_distance(p1(0, 0, 2), Point::identity(1)), ValidationError);
}

TEST(GradDistance, EikonalAnalytic) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto [x, y] = random_omega_pair(rng, 1 + i % 3);
    EXPECT_NEAR(norm(grad_distance(x, y).horizontal), 1.0, 1e-9);
  }
}

// Independent oracle: central differences of s -> d_y(x . [s e_j, 0]) (flow of X_j),
// of s -> d_y(x . [i s e_j, 0]) (flow of Y_j) and of s -> d_y(x . [0, s]) (flow of T).
TEST(GradDistance, MatchesFiniteDifferences) {
  Rng rng(8);
  constexpr double h = 1e-5;
  int checked = 0;
  while (checked < 300) {
    const std::size_t n = 1 + checked % 2;
    const auto [x, y] = random_omega_pair(rng, n);
    // stay away from the non-smooth set L_y
    if (norm(relative(y, x).zeta) < 0.05) continue;
    const DistanceGradient g = grad_distance(x, y);
    auto dy = [&](const Point& p) { return cc_distance(p, y); };
    for (std::size_t j = 0; j < n; ++j) {
      Point ex = Point::identity(n), ey = Point::identity(n);
      ex.zeta[j] = Complex(h, 0);
      ey.zeta[j] = Complex(0, h);
      const double xj = (dy(mul(x, ex)) - dy(mul(x, inv(ex)))) / (2 * h);
      const double yj = (dy(mul(x, ey)) - dy(mul(x, inv(ey)))) / (2 * h);
      EXPECT_NEAR(xj, g.horizontal[j].real(), 1e-4);
      EXPECT_NEAR(yj, g.horizontal[j].imag(), 1e-4);
    }
    Point et = Point::identity(n);
    et.t = h;
    const double tj = (dy(mul(x, et)) - dy(mul(x, inv(et)))) / (2 * h);
    EXPECT_NEAR(tj, g.vertical, 1e-4);
    ++checked;
  }
}

// The initial velocity of the minimal curve from x to y is -d(x,y) grad_H d_y(x).
TEST(GradDistance, InitialVelocityOpposesGradient) {
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    const auto [x, y] = random_omega_pair(rng, 1 + i % 2);
    const GeodesicParam g = log_geodesic(relative(x, y));
    const DistanceGradient grad = grad_distance(x, y);
    const double d = cc_distance(x, y);
    for (std::size_t j = 0; j < x.n(); ++j) EXPECT_NEAR(std::abs(g.chi[j] + d * grad.horizontal[j]), 0.0, 1e-8);
  }
}

}  // namespace
}  // namespace heisot
