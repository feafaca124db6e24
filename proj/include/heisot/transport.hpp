#ifndef HEISOT_TRANSPORT_HPP
#define HEISOT_TRANSPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "heisot/geodesic.hpp"
#include "heisot/measures.hpp"
#include "heisot/network_simplex.hpp"

namespace heisot {

using CostFunction = std::function<double(const Point&, const Point&)>;

inline double distance_cost(const Point& x, const Point& y) { return cc_distance(x, y); }
inline double squared_distance_cost(const Point& x, const Point& y) {
  const double d = cc_distance(x, y);
  return d * d;
}

/// Entries with mass at or below this are treated as degenerate basic zeros and dropped.
inline constexpr double kPlanMassFloor = 1e-14;
inline constexpr double kMarginalTolerance = 1e-10;

struct PlanEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double mass = 0.0;
  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

/// Sparse coupling between two atomic measures.
struct TransportPlan {
  AtomicMeasure source;
  AtomicMeasure target;
  std::vector<PlanEntry> entries;

  [[nodiscard]] std::vector<double> row_sums() const {
    std::vector<double> r(source.size(), 0.0);
    for (const auto& e : entries) r[e.i] += e.mass;
    return r;
  }
  [[nodiscard]] std::vector<double> col_sums() const {
    std::vector<double> c(target.size(), 0.0);
    for (const auto& e : entries) c[e.j] += e.mass;
    return c;
  }
  [[nodiscard]] double integral(const CostFunction& cost) const {
    double s = 0.0;
    for (const auto& e : entries) s += e.mass * cost(source.atoms[e.i], target.atoms[e.j]);
    return s;
  }
  [[nodiscard]] double total_mass() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.mass;
    return s;
  }

  /// Largest deviation of either marginal from the source/target weights.
  [[nodiscard]] double marginal_error() const {
    double worst = 0.0;
    const auto r = row_sums();
    for (std::size_t i = 0; i < r.size(); ++i) worst = std::max(worst, std::abs(r[i] - source.weights[i]));
    const auto c = col_sums();
    for (std::size_t j = 0; j < c.size(); ++j) worst = std::max(worst, std::abs(c[j] - target.weights[j]));
    return worst;
  }

  void validate(double tol = kMarginalTolerance) const {
    source.validate();
    target.validate();
    detail::require(source.n() == target.n(), "plan: source and target dimensions differ");
    for (const auto& e : entries) {
      detail::require(e.i < source.size() && e.j < target.size(), "plan: entry index out of range");
      detail::require(std::isfinite(e.mass) && e.mass > 0.0, "plan: entry masses must be positive");
    }
    detail::require(marginal_error() <= tol, "plan: marginals do not match the source/target weights");
  }

  /// (pi_2)_# gamma over the target atoms that receive mass.
  [[nodiscard]] AtomicMeasure second_marginal() const {
    const auto c = col_sums();
    std::vector<Point> atoms;
    std::vector<double> w;
    const double total = std::accumulate(c.begin(), c.end(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] > 0.0) {
        atoms.push_back(target.atoms[j]);
        w.push_back(c[j] / total);
      }
    return AtomicMeasure(std::move(atoms), std::move(w));
  }
};

/// Kantorovich potentials (psi on source atoms, psi^c on target atoms).
struct DualPotential {
  std::vector<double> psi;
  std::vector<double> psi_c;
};

/// Dense row-major cost matrix over source x target atoms.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

inline CostMatrix cost_matrix(const AtomicMeasure& mu, const AtomicMeasure& nu, const CostFunction& cost) {
  CostMatrix c{mu.size(), nu.size(), std::vector<double>(mu.size() * nu.size())};
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double v = cost(mu.atoms[i], nu.atoms[j]);
      detail::require(std::isfinite(v), "transport: cost is not finite on the support product");
      c.values[i * c.cols + j] = v;
    }
  return c;
}

/// Squares every entry; d -> d^2 without recomputing distances.
inline CostMatrix squared(const CostMatrix& c) {
  CostMatrix s = c;
  for (double& v : s.values) v *= v;
  return s;
}

struct KantorovichResult {
  TransportPlan plan;
  DualPotential dual;
  double value = 0.0;       // primal: sum_ij c_ij gamma_ij
  double dual_value = 0.0;  // sum_i mu_i psi_i + sum_j nu_j psi^c_j
};

namespace detail {

/// Exact transport LP over the arcs with allowed[i*cols+j] (all arcs when allowed is empty).
inline KantorovichResult solve_transport(const AtomicMeasure& mu, const AtomicMeasure& nu, const CostMatrix& c,
                                         const std::vector<bool>& allowed = {}) {
  require(mu.n() == nu.n(), "transport: source and target dimensions differ");
  require(c.rows == mu.size() && c.cols == nu.size(), "transport: cost matrix shape mismatch");
  const std::size_t m = mu.size(), k = nu.size();
  MinCostFlow net(m + k);
  for (std::size_t i = 0; i < m; ++i) net.set_supply(i, mu.weights[i]);
  for (std::size_t j = 0; j < k; ++j) net.set_supply(m + j, -nu.weights[j]);
  std::vector<std::pair<std::size_t, std::size_t>> arc_ends;
  arc_ends.reserve(m * k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!allowed.empty() && !allowed[i * k + j]) continue;
      require(std::isfinite(c(i, j)), "transport: cost is not finite on the support product");
      net.add_arc(i, m + j, c(i, j));
      arc_ends.emplace_back(i, j);
    }
  net.solve();

  KantorovichResult r;
  r.plan.source = mu;
  r.plan.target = nu;
  for (std::size_t e = 0; e < arc_ends.size(); ++e) {
    const double f = net.flow(e);
    if (f > kPlanMassFloor) r.plan.entries.push_back({arc_ends[e].first, arc_ends[e].second, f});
  }
  // pi_{target} - pi_{source} <= c on every arc, so psi = -pi(source), psi^c = pi(target).
  r.dual.psi.resize(m);
  r.dual.psi_c.resize(k);
  for (std::size_t i = 0; i < m; ++i) r.dual.psi[i] = -net.potential(i);
  for (std::size_t j = 0; j < k; ++j) r.dual.psi_c[j] = net.potential(m + j);
  for (const auto& e : r.plan.entries) r.value += e.mass * c(e.i, e.j);
  for (std::size_t i = 0; i < m; ++i) r.dual_value += mu.weights[i] * r.dual.psi[i];
  for (std::size_t j = 0; j < k; ++j) r.dual_value += nu.weights[j] * r.dual.psi_c[j];
  return r;
}

}  // namespace detail

/// Exact discrete Kantorovich problem min_{gamma in Pi(mu, nu)} sum c dgamma by network simplex.
inline KantorovichResult solve_kantorovich(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                           const CostFunction& cost = distance_cost) {
  mu.validate();
  nu.validate();
  detail::require(mu.n() == nu.n(), "transport: source and target dimensions differ");
  return detail::solve_transport(mu, nu, cost_matrix(mu, nu, cost));
}

inline KantorovichResult solve_kantorovich(const AtomicMeasure& mu, const AtomicMeasure& nu, const CostMatrix& c) {
  mu.validate();
  nu.validate();
  return detail::solve_transport(mu, nu, c);
}

/// Wasserstein-1 distance for the Carnot-Caratheodory metric.
inline double w1(const AtomicMeasure& mu, const AtomicMeasure& nu) { return solve_kantorovich(mu, nu).value; }

/// Reduced-cost threshold defining the d-optimal face in solve_secondary.
inline constexpr double kTightArcTolerance = 1e-10;
inline constexpr double kSecondarySlack = 1e-9;

/// Among d-optimal couplings, one minimizing the d^2-cost.
/// Stage 2 runs on the arcs that are tight for an optimal stage-1 dual: by complementary
/// slackness that arc set carries exactly the d-optimal couplings.
inline TransportPlan solve_secondary(const AtomicMeasure& mu, const AtomicMeasure& nu) {
  mu.validate();
  nu.validate();
  detail::require(mu.n() == nu.n(), "transport: source and target dimensions differ");
  const CostMatrix d = cost_matrix(mu, nu, distance_cost);
  const auto stage1 = detail::solve_transport(mu, nu, d);
  std::vector<bool> tight(d.values.size(), false);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j)
      tight[i * d.cols + j] = d(i, j) - stage1.dual.psi[i] - stage1.dual.psi_c[j] <= kTightArcTolerance;
  for (const auto& e : stage1.plan.entries) tight[e.i * d.cols + e.j] = true;
  auto stage2 = detail::solve_transport(mu, nu, squared(d), tight);
  double d_cost = 0.0;
  for (const auto& e : stage2.plan.entries) d_cost += e.mass * d(e.i, e.j);
  if (d_cost > stage1.value + kSecondarySlack) throw SolverError("solve_secondary: stage 2 left the d-optimal face");
  return std::move(stage2.plan);
}

/// The c-transform u(x) = min_j d(x, y_j) - psi^c_j of a stage-1 dual for cost d.
/// It is 1-Lipschitz, agrees with psi on the source support, and u(x) - u(y) = d(x, y) on the plan.
struct LipschitzPotential {
  std::vector<Point> targets;
  std::vector<double> psi_c;

  [[nodiscard]] double operator()(const Point& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < targets.size(); ++j) best = std::min(best, cc_distance(x, targets[j]) - psi_c[j]);
    return best;
  }
};

inline LipschitzPotential lipschitz_potential(const KantorovichResult& r) {
  return {r.plan.target.atoms, r.dual.psi_c};
}

/// sum_i (w_i - max_j gamma_ij): the mass not carried by each source atom's dominant target.
inline double graph_dispersion(const TransportPlan& gamma) {
  std::vector<double> dominant(gamma.source.size(), 0.0);
  for (const auto& e : gamma.entries) dominant[e.i] = std::max(dominant[e.i], e.mass);
  const auto rows = gamma.row_sums();
  double s = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) s += rows[i] - dominant[i];
  return std::max(0.0, s);
}

inline constexpr std::size_t kNoTarget = std::numeric_limits<std::size_t>::max();

struct TransportMap {
  /// Dominant target per source atom; kNoTarget for atoms that carry no mass.
  std::vector<std::size_t> target_index;
  std::vector<Point> image;
};

struct SplitAtom {
  std::size_t source = 0;
  std::vector<std::pair<std::size_t, double>> distribution;  // (target index, mass)
};

struct SplitReport {
  std::vector<SplitAtom> splits;
  /// Mass of the split atoms not sent to their dominant target.
  double split_mass = 0.0;
};

/// Returns a map when every source atom sends at least (1 - tol) of its mass to one target
/// (ties go to the lowest target index), otherwise the split atoms.
inline std::variant<TransportMap, SplitReport> transport_map_extract(const TransportPlan& gamma, double tol) {
  const std::size_t m = gamma.source.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(m);
  for (const auto& e : gamma.entries) rows[e.i].emplace_back(e.j, e.mass);
  TransportMap map;
  map.target_index.assign(m, kNoTarget);
  map.image.resize(m);
  SplitReport report;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = rows[i];
    if (row.empty()) continue;
    std::sort(row.begin(), row.end());
    double total = 0.0;
    std::size_t best = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      total += row[k].second;
      if (row[k].second > row[best].second) best = k;
    }
    map.target_index[i] = row[best].first;
    map.image[i] = gamma.target.atoms[row[best].first];
    if (row[best].second < (1.0 - tol) * total) {
      report.splits.push_back({i, row});
      report.split_mass += total - row[best].second;
    }
  }
  if (report.splits.empty()) return map;
  return report;
}

}  // namespace heisot

#endif  // HEISOT_TRANSPORT_HPP
