#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "heisot/network_simplex.hpp"
#include "support/oracles.hpp"

using heisot::MinCostFlow;

namespace {

// Bipartite transport instance as a min-cost flow; returns (cost, max dual violation).
struct Outcome {
  double cost;
  double worst_reduced_cost;
  double worst_imbalance;
};

Outcome run_transport(const oracle::Matrix& c, const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t m = a.size(), k = b.size();
  MinCostFlow net(m + k);
  for (std::size_t i = 0; i < m; ++i) net.set_supply(i, a[i]);
  for (std::size_t j = 0; j < k; ++j) net.set_supply(m + j, -b[j]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) net.add_arc(i, m + j, c[i][j]);
  net.solve();
  Outcome o{net.total_cost(), 0.0, 0.0};
  std::vector<double> row(m, 0.0), col(k, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t e = i * k + j;
      EXPECT_GE(net.flow(e), 0.0);
      row[i] += net.flow(e);
      col[j] += net.flow(e);
      const double rc = c[i][j] + net.potential(i) - net.potential(m + j);
      o.worst_reduced_cost = std::min(o.worst_reduced_cost, rc);
      if (net.flow(e) > 0.0) {
        EXPECT_NEAR(rc, 0.0, 1e-9);
      }
    }
  for (std::size_t i = 0; i < m; ++i) o.worst_imbalance = std::max(o.worst_imbalance, std::abs(row[i] - a[i]));
  for (std::size_t j = 0; j < k; ++j) o.worst_imbalance = std::max(o.worst_imbalance, std::abs(col[j] - b[j]));
  return o;
}

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t size) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(size);
  double s = 0.0;
  for (auto& v : w) s += (v = u(rng));
  for (auto& v : w) v /= s;
  return w;
}

}  // namespace

TEST(MinCostFlow, TwoByTwoDiagonal) {
  const auto o = run_transport({{1, 2}, {2, 1}}, {0.5, 0.5}, {0.5, 0.5});
  EXPECT_NEAR(o.cost, 1.0, 1e-15);
}

TEST(MinCostFlow, SingleSourceSplitsToAll) {
  const auto o = run_transport({{3, 1, 2}}, {1.0}, {0.2, 0.3, 0.5});
  EXPECT_NEAR(o.cost, 0.6 + 0.3 + 1.0, 1e-14);
}

TEST(MinCostFlow, MatchesDenseLpOnRandomInstances) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + trial % 6, k = 1 + (trial / 6) % 6;
    oracle::Matrix c(m, std::vector<double>(k));
    for (auto& row : c)
      for (auto& v : row) v = u(rng);
    const auto a = random_simplex(rng, m), b = random_simplex(rng, k);
    const auto o = run_transport(c, a, b);
    EXPECT_NEAR(o.cost, oracle::dense_transport(c, a, b), 1e-10) << m << "x" << k;
    EXPECT_GE(o.worst_reduced_cost, -1e-10);
    EXPECT_LE(o.worst_imbalance, 1e-12);
  }
}

TEST(MinCostFlow, DegenerateIntegerInstances) {
  // Equal integer masses make nearly every basis degenerate.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(0, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 2 + trial % 5;
    oracle::Matrix c(k, std::vector<double>(k));
    for (auto& row : c)
      for (auto& v : row) v = u(rng);
    const std::vector<double> w(k, 1.0 / static_cast<double>(k));
    const auto o = run_transport(c, w, w);
    EXPECT_NEAR(o.cost, oracle::lex_over_permutations(c).primary, 1e-12);
  }
}

TEST(MinCostFlow, Transshipment) {
  // 0 -> 1 -> 2 is cheaper than the direct arc 0 -> 2.
  MinCostFlow net(3);
  net.set_supply(0, 1.0);
  net.set_supply(2, -1.0);
  const auto direct = net.add_arc(0, 2, 5.0);
  const auto a = net.add_arc(0, 1, 1.0);
  const auto b = net.add_arc(1, 2, 1.0);
  net.solve();
  EXPECT_DOUBLE_EQ(net.flow(direct), 0.0);
  EXPECT_DOUBLE_EQ(net.flow(a), 1.0);
  EXPECT_DOUBLE_EQ(net.flow(b), 1.0);
  EXPECT_DOUBLE_EQ(net.total_cost(), 2.0);
}

TEST(MinCostFlow, InfeasibleAndUnbalanced) {
  MinCostFlow missing(2);
  missing.set_supply(0, 1.0);
  missing.set_supply(1, -1.0);
  missing.add_arc(1, 0, 1.0);
  EXPECT_THROW(missing.solve(), heisot::SolverError);

  MinCostFlow unbalanced(2);
  unbalanced.set_supply(0, 1.0);
  unbalanced.set_supply(1, -0.5);
  unbalanced.add_arc(0, 1, 1.0);
  EXPECT_THROW(unbalanced.solve(), heisot::ValidationError);

  MinCostFlow net(2);
  EXPECT_THROW(net.add_arc(0, 1, std::nan("")), heisot::ValidationError);
  EXPECT_THROW((void)net.flow(0), heisot::SolverError);
}

TEST(MinCostFlow, NegativeCycleIsUnbounded) {
  MinCostFlow net(2);
  net.add_arc(0, 1, -1.0);
  net.add_arc(1, 0, -1.0);
  EXPECT_THROW(net.solve(), heisot::SolverError);
}

TEST(MinCostFlow, LargeRandomInstance) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t m = 150, k = 120;
  oracle::Matrix c(m, std::vector<double>(k));
  for (auto& row : c)
    for (auto& v : row) v = u(rng);
  const auto o = run_transport(c, random_simplex(rng, m), random_simplex(rng, k));
  EXPECT_GE(o.worst_reduced_cost, -1e-10);
  EXPECT_LE(o.worst_imbalance, 1e-12);
}
