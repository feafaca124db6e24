#ifndef HEISOT_APPROXIMATION_HPP
#define HEISOT_APPROXIMATION_HPP

// Penalized approximations of the secondary transport problem:
//   C_eps(gamma) = (1/eps) W_1((pi_2)_# gamma, nu) + int d dgamma + eps int d^2 dgamma
//                  + eps^p card(spt (pi_2)_# gamma),          p = 6n + 8 by default,
// minimized over plans with first marginal mu.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "heisot/box.hpp"
#include "heisot/measures.hpp"
#include "heisot/network_simplex.hpp"
#include "heisot/transport.hpp"

namespace heisot {

/// c_eps(x, y) = d(x, y) + eps d(x, y)^2.
inline double c_eps_cost(double epsilon, const Point& x, const Point& y) {
  detail::require(epsilon > 0.0, "c_eps_cost: epsilon must be positive");
  const double d = cc_distance(x, y);
  return d + epsilon * d * d;
}

struct CepsConfig {
  double epsilon = 0.1;
  /// Compact set that must contain the second marginal.
  Box K;
  /// Exponent of the cardinality penalty; 6n + 8 when unset.
  std::optional<double> cardinality_exponent;
  /// Largest quantization level m in the search; 0 runs the schedule until nu_m = nu.
  int max_m = 0;
  /// Also re-optimize the second marginal on each net by an exact transshipment.
  bool reweight = true;

  [[nodiscard]] double exponent(std::size_t n) const {
    return cardinality_exponent.value_or(6.0 * static_cast<double>(n) + 8.0);
  }
  void validate() const {
    detail::require(epsilon > 0.0 && std::isfinite(epsilon), "C_eps: epsilon must be positive");
    detail::require(K.dim() >= 3, "C_eps: the compact box K is not set");
    detail::require(max_m >= 0, "C_eps: max_m must be >= 0");
  }
};

struct CepsBreakdown {
  double w1 = 0.0;        // W_1((pi_2)_# gamma, nu)
  double w1_term = 0.0;   // w1 / eps
  double d_cost = 0.0;    // int d dgamma
  double d2_cost = 0.0;   // int d^2 dgamma
  double d2_term = 0.0;   // eps d2_cost
  std::size_t card = 0;   // card spt (pi_2)_# gamma
  double card_term = 0.0; // eps^p card
  double total = 0.0;
};

inline CepsBreakdown evaluate_C_eps(const CepsConfig& cfg, const TransportPlan& gamma, const AtomicMeasure& nu) {
  cfg.validate();
  const AtomicMeasure marginal = gamma.second_marginal();
  for (const auto& y : marginal.atoms)
    detail::require(cfg.K.contains(y), "evaluate_C_eps: second marginal leaves the compact set K");
  CepsBreakdown b;
  b.w1 = w1(marginal, nu);
  b.w1_term = b.w1 / cfg.epsilon;
  for (const auto& e : gamma.entries) {
    const double d = cc_distance(gamma.source.atoms[e.i], gamma.target.atoms[e.j]);
    b.d_cost += e.mass * d;
    b.d2_cost += e.mass * d * d;
  }
  b.d2_term = cfg.epsilon * b.d2_cost;
  b.card = marginal.size();
  b.card_term = std::pow(cfg.epsilon, cfg.exponent(nu.n())) * static_cast<double>(b.card);
  b.total = b.w1_term + b.d_cost + b.d2_term + b.card_term;
  return b;
}

struct PepsCandidate {
  int m = 0;
  bool reweighted = false;
  std::size_t card = 0;
  double value = 0.0;
};

struct PepsResult {
  TransportPlan plan;
  CepsBreakdown value;
  int m = 0;
  bool reweighted = false;
  std::vector<PepsCandidate> candidates;
};

namespace detail {

/// min over gamma with first marginal mu and second marginal supported on `net` of
///   int c_eps dgamma + (1/eps) W_1((pi_2)_# gamma, nu),
/// as one transshipment mu -> net -> nu.
inline TransportPlan reweight_on_net(const AtomicMeasure& mu, const AtomicMeasure& net, const AtomicMeasure& nu,
                                     const CostMatrix& c_eps, double epsilon) {
  const std::size_t a = mu.size(), f = net.size(), k = nu.size();
  MinCostFlow flow(a + f + k);
  for (std::size_t i = 0; i < a; ++i) flow.set_supply(i, mu.weights[i]);
  for (std::size_t j = 0; j < k; ++j) flow.set_supply(a + f + j, -nu.weights[j]);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t q = 0; q < f; ++q) flow.add_arc(i, a + q, c_eps(i, q));
  for (std::size_t q = 0; q < f; ++q)
    for (std::size_t j = 0; j < k; ++j) flow.add_arc(a + q, a + f + j, cc_distance(net.atoms[q], nu.atoms[j]) / epsilon);
  flow.solve();

  std::vector<double> inflow(f, 0.0);
  std::vector<PlanEntry> raw;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t q = 0; q < f; ++q) {
      const double m = flow.flow(i * f + q);
      if (m > kPlanMassFloor) {
        raw.push_back({i, q, m});
        inflow[q] += m;
      }
    }
  std::vector<std::size_t> index(f, kNoTarget);
  std::vector<Point> atoms;
  std::vector<double> weights;
  double total = 0.0;
  for (double v : inflow) total += v;
  for (std::size_t q = 0; q < f; ++q)
    if (inflow[q] > 0.0) {
      index[q] = atoms.size();
      atoms.push_back(net.atoms[q]);
      weights.push_back(inflow[q] / total);
    }
  TransportPlan plan;
  plan.source = mu;
  plan.target = AtomicMeasure(std::move(atoms), std::move(weights));
  for (auto e : raw) {
    e.j = index[e.j];
    plan.entries.push_back(e);
  }
  return plan;
}

}  // namespace detail

/// Best plan for C_eps over the search family: for m = 1, 2, 4, ... the quantized
/// marginal nu_m = (p_m)_# nu (net built greedily over the atoms of nu), coupled to mu by
/// the exact c_eps-optimal plan, plus (when cfg.reweight) the exact optimum over all second
/// marginals supported on spt nu_m. The schedule stops once nu_m = nu or m reaches cfg.max_m.
inline PepsResult solve_P_eps(const CepsConfig& cfg, const AtomicMeasure& mu_emp, const AtomicMeasure& nu) {
  cfg.validate();
  mu_emp.validate();
  nu.validate();
  detail::require(mu_emp.n() == nu.n(), "solve_P_eps: dimension mismatch");
  for (const auto& y : nu.atoms) detail::require(cfg.K.contains(y), "solve_P_eps: nu is not supported in K");

  PepsResult best;
  best.value.total = std::numeric_limits<double>::infinity();
  const auto consider = [&](TransportPlan plan, int m, bool reweighted) {
    const CepsBreakdown v = evaluate_C_eps(cfg, plan, nu);
    best.candidates.push_back({m, reweighted, v.card, v.total});
    if (v.total < best.value.total) {
      best.plan = std::move(plan);
      best.value = v;
      best.m = m;
      best.reweighted = reweighted;
    }
  };

  for (int m = 1;; m *= 2) {
    const QuantizationMap q = quantize(nu.atoms, m);
    const AtomicMeasure nu_m = pushforward_quantize(nu, q);
    const CostMatrix c = cost_matrix(mu_emp, nu_m, [&](const Point& x, const Point& y) {
      return c_eps_cost(cfg.epsilon, x, y);
    });
    consider(detail::solve_transport(mu_emp, nu_m, c).plan, m, false);
    if (cfg.reweight) consider(detail::reweight_on_net(mu_emp, nu_m, nu, c, cfg.epsilon), m, true);
    if (nu_m.size() == nu.size()) break;
    if (cfg.max_m > 0 && 2 * m > cfg.max_m) break;
    if (m > (1 << 29)) throw SolverError("solve_P_eps: quantization schedule did not resolve nu");
  }
  return best;
}

/// Axis-aligned box around spt mu and spt nu, each side grown by 10% of its width.
inline Box default_compact(const Box& mu_box, const AtomicMeasure& nu) {
  std::vector<Point> pts = nu.atoms;
  pts.push_back(Point::from_coords(mu_box.lo));
  pts.push_back(Point::from_coords(mu_box.hi));
  return Box::bounding(pts).inflated(0.1, 1e-6);
}

struct SequenceOptions {
  std::optional<double> cardinality_exponent;
  int max_m = 0;
  bool reweight = true;
};

struct SequenceStep {
  double epsilon = 0.0;
  TransportPlan plan;
  CepsBreakdown value;
  double w1_gap = 0.0;      // int d dgamma_eps - W_1(mu_N, nu)
  double dispersion = 0.0;  // graph_dispersion(plan)
  int m = 0;
  bool reweighted = false;
};

struct SequenceResult {
  AtomicMeasure mu_emp;
  Box K;
  double w1_reference = 0.0;  // W_1(mu_N, nu)
  std::vector<SequenceStep> steps;
};

/// Fixes one empirical mu_N and solves (P_eps) along a decreasing epsilon schedule.
inline SequenceResult run_approximation_sequence(const SampledMeasure& mu, const AtomicMeasure& nu,
                                                 const std::vector<double>& epsilons, std::size_t sample_size,
                                                 std::uint64_t seed, const SequenceOptions& options = {}) {
  detail::require(!epsilons.empty(), "approximation sequence: empty epsilon schedule");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    detail::require(epsilons[k] > 0.0, "approximation sequence: epsilons must be positive");
    if (k > 0) detail::require(epsilons[k] < epsilons[k - 1], "approximation sequence: epsilons must decrease");
  }
  nu.validate();
  SequenceResult out;
  out.mu_emp = empirical(mu, sample_size, seed);
  detail::require(out.mu_emp.n() == nu.n(), "approximation sequence: dimension mismatch");
  out.K = default_compact(mu.support_box, nu);
  out.w1_reference = w1(out.mu_emp, nu);
  for (double eps : epsilons) {
    CepsConfig cfg;
    cfg.epsilon = eps;
    cfg.K = out.K;
    cfg.cardinality_exponent = options.cardinality_exponent;
    cfg.max_m = options.max_m;
    cfg.reweight = options.reweight;
    PepsResult r = solve_P_eps(cfg, out.mu_emp, nu);
    SequenceStep s;
    s.epsilon = eps;
    s.value = r.value;
    s.w1_gap = r.value.d_cost - out.w1_reference;
    s.dispersion = graph_dispersion(r.plan);
    s.m = r.m;
    s.reweighted = r.reweighted;
    s.plan = std::move(r.plan);
    out.steps.push_back(std::move(s));
  }
  return out;
}

/// (e_t o S)_# gamma: mass gamma_ij at the point at fraction t along the selected curve from
/// x_i to y_j. Coincident points are merged in first-occurrence order.
inline AtomicMeasure interpolate(const TransportPlan& gamma, double t) {
  detail::require(t >= 0.0 && t <= 1.0, "interpolate: t must lie in [0, 1]");
  detail::require(!gamma.entries.empty(), "interpolate: empty plan");
  std::vector<Point> pts;
  std::vector<double> mass;
  pts.reserve(gamma.entries.size());
  mass.reserve(gamma.entries.size());
  double total = 0.0;
  for (const auto& e : gamma.entries) {
    pts.push_back(eval_curve(gamma.source.atoms[e.i], gamma.target.atoms[e.j], t));
    mass.push_back(e.mass);
    total += e.mass;
  }
  for (double& m : mass) m /= total;
  return AtomicMeasure::merged(pts, mass);
}

}  // namespace heisot

#endif  // HEISOT_APPROXIMATION_HPP
