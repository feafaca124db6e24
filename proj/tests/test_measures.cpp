#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "heisot/measures.hpp"

using namespace heisot;

namespace {

Point pt(double xi, double eta, double t) { return Point({Complex(xi, eta)}, t); }

std::vector<Point> uniform_cloud(std::size_t count, std::uint64_t seed) {
  return empirical(SampledMeasure::uniform_box(Box::cube(1, 0.0, 1.0)), count, seed).atoms;
}

}  // namespace

TEST(AtomicMeasure, AcceptsValid) {
  AtomicMeasure m({pt(0, 0, 0), pt(1, 0, 0)}, {0.25, 0.75});
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.n(), 1u);
  EXPECT_DOUBLE_EQ(m.total_mass(), 1.0);
}

TEST(AtomicMeasure, RejectsBadInput) {
  EXPECT_THROW(AtomicMeasure({}, {}), ValidationError);
  EXPECT_THROW(AtomicMeasure({pt(0, 0, 0)}, {0.9}), ValidationError);
  EXPECT_THROW(AtomicMeasure({pt(0, 0, 0), pt(1, 0, 0)}, {1.5, -0.5}), ValidationError);
  EXPECT_THROW(AtomicMeasure({pt(0, 0, 0), pt(0, 0, 1e-14)}, {0.5, 0.5}), ValidationError);
  EXPECT_THROW(AtomicMeasure({pt(0, 0, 0)}, {0.5, 0.5}), ValidationError);
  EXPECT_THROW(AtomicMeasure({pt(0, 0, std::nan(""))}, {1.0}), ValidationError);
  EXPECT_THROW(AtomicMeasure({pt(0, 0, 0), Point::identity(2)}, {0.5, 0.5}), ValidationError);
}

TEST(AtomicMeasure, MergedSumsDuplicatesInOrder) {
  const std::vector<Point> p{pt(1, 0, 0), pt(0, 0, 0), pt(1, 0, 0)};
  const std::vector<double> w{0.25, 0.5, 0.25};
  const auto m = AtomicMeasure::merged(p, w);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.atoms[0], pt(1, 0, 0));
  EXPECT_DOUBLE_EQ(m.weights[0], 0.5);
  EXPECT_DOUBLE_EQ(m.weights[1], 0.5);
}

TEST(Empirical, SingleSample) {
  const auto m = empirical(SampledMeasure::uniform_box(Box::cube(1, 0.0, 1.0)), 1, 3);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(m.weights[0], 1.0);
}

TEST(Empirical, DeterministicUnderSeed) {
  const auto a = uniform_cloud(100, 42);
  const auto b = uniform_cloud(100, 42);
  const auto c = uniform_cloud(100, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Empirical, MeanNearBoxCenter) {
  const std::size_t count = 10000;
  const auto cloud = uniform_cloud(count, 11);
  double mean = 0.0;
  for (const auto& p : cloud) mean += p.zeta[0].real();
  mean /= static_cast<double>(count);
  // Uniform on [0,1]: sigma = 1/sqrt(12).
  EXPECT_NEAR(mean, 0.5, 3.0 / std::sqrt(12.0) / std::sqrt(static_cast<double>(count)));
}

TEST(SampledMeasure, DensityIntegratesToOne) {
  const auto mu = SampledMeasure::uniform_box(Box({-1.0, 0.0, 2.0}, {1.0, 0.5, 3.0}));
  const auto est = integrate_density(mu, 10000, 5);
  EXPECT_NEAR(est.value, 1.0, 3.0 * est.std_error + 1e-12);
  EXPECT_DOUBLE_EQ(mu.density_sup, 1.0);
}

TEST(Quantize, SinglePoint) {
  const std::vector<Point> p{pt(0.3, 0.1, 0.2)};
  for (int m : {1, 5, 100}) {
    const auto q = quantize(p, m);
    EXPECT_EQ(q.size(), 1u);
    EXPECT_EQ(q.assign(p[0]), 0u);
  }
}

TEST(Quantize, FarPointsStaySeparate) {
  const std::vector<Point> p{pt(0, 0, 0), pt(3, 0, 0)};
  ASSERT_DOUBLE_EQ(cc_distance(p[0], p[1]), 3.0);
  EXPECT_EQ(quantize(p, 1).size(), 2u);
}

TEST(Quantize, RejectsBadArguments) {
  EXPECT_THROW(quantize(std::vector<Point>{}, 1), ValidationError);
  const std::vector<Point> p{pt(0, 0, 0)};
  EXPECT_THROW(quantize(p, 0), ValidationError);
}

TEST(Quantize, CoveringSeparationAndPackingGrowth) {
  const auto cloud = uniform_cloud(1000, 2024);
  std::vector<double> constants;
  for (int m : {1, 2, 4, 8}) {
    const auto q = quantize(cloud, m);
    const double r = 1.0 / m;
    double worst = 0.0;
    for (const auto& x : cloud) {
      const auto k = q.assign(x);
      ASSERT_TRUE(k.has_value());
      worst = std::max(worst, cc_distance(q.net()[*k], x));
    }
    EXPECT_LT(worst, r) << "m=" << m;
    for (std::size_t a = 0; a < q.size(); ++a)
      for (std::size_t b = a + 1; b < q.size(); ++b) EXPECT_GE(cc_distance(q.net()[a], q.net()[b]), r);
    constants.push_back(packing_constant(q.size(), m, 1));
  }
  // card(F_m) m^{-4} must stay bounded; with a fixed sample it decreases once the net saturates.
  const double c_fit = constants.front();
  for (double c : constants) EXPECT_LE(c, c_fit);
}

TEST(Pushforward, NetSupportedMeasureUnchanged) {
  const auto cloud = uniform_cloud(200, 9);
  const auto q = quantize(cloud, 2);
  const auto nu = AtomicMeasure::uniform(q.net());
  const auto pushed = pushforward_quantize(nu, q);
  EXPECT_EQ(pushed.atoms, nu.atoms);
  EXPECT_EQ(pushed.weights, nu.weights);
}

TEST(Pushforward, DiracGoesToItsNetPoint) {
  const auto cloud = uniform_cloud(200, 9);
  const auto q = quantize(cloud, 3);
  const auto x = cloud[137];
  const auto pushed = pushforward_quantize(AtomicMeasure::dirac(x), q);
  ASSERT_EQ(pushed.size(), 1u);
  EXPECT_EQ(pushed.atoms[0], q.net()[*q.assign(x)]);
}

TEST(Pushforward, RejectsUncoveredAtoms) {
  const std::vector<Point> net{pt(0, 0, 0)};
  const auto q = quantize(net, 1);
  EXPECT_THROW(pushforward_quantize(AtomicMeasure::dirac(pt(5, 0, 0)), q), ValidationError);
}

TEST(Histogram, SingleAtomUnitCell) {
  const auto grid = HistogramGrid::covering(Box::cube(1, 0.0, 2.0), 1.0);
  ASSERT_EQ(grid.cell_count(), 8u);
  const auto f = histogram_density(AtomicMeasure::dirac(pt(0.5, 1.5, 0.5)), grid);
  EXPECT_DOUBLE_EQ(f.max(), 1.0);
  const auto k = grid.index(pt(0.5, 1.5, 0.5));
  ASSERT_TRUE(k.has_value());
  EXPECT_DOUBLE_EQ(f.values[*k], 1.0);
  const auto c = grid.cell_center(*k);
  EXPECT_DOUBLE_EQ(c[0], 0.5);
  EXPECT_DOUBLE_EQ(c[1], 1.5);
  EXPECT_DOUBLE_EQ(c[2], 0.5);
}

TEST(Histogram, UpperFaceBelongsToLastCell) {
  const auto grid = HistogramGrid::covering(Box::cube(1, 0.0, 1.0), 0.25);
  EXPECT_TRUE(grid.index(pt(1.0, 1.0, 1.0)).has_value());
  EXPECT_FALSE(grid.index(pt(1.01, 0.5, 0.5)).has_value());
  EXPECT_FALSE(grid.index(pt(-0.01, 0.5, 0.5)).has_value());
}

TEST(Histogram, UniformSampleMassAndMax) {
  const auto mu = empirical(SampledMeasure::uniform_box(Box::cube(1, 0.0, 1.0)), 10000, 77);
  const auto f = histogram_density(mu, HistogramGrid::covering(Box::cube(1, 0.0, 1.0), 0.25));
  EXPECT_NEAR(f.integral(), 1.0, 1e-12);
  EXPECT_LT(std::abs(f.max() - 1.0), 0.5);
}

TEST(Histogram, RejectsAtomsOutsideGrid) {
  const auto grid = HistogramGrid::covering(Box::cube(1, 0.0, 1.0), 0.5);
  EXPECT_THROW(histogram_density(AtomicMeasure::dirac(pt(2, 0, 0)), grid), ValidationError);
}
