#ifndef HEISOT_SUITES_HPP
#define HEISOT_SUITES_HPP

// Named batteries of checks (geometry, transport, density) with fixed default sizes.
// Each check is a plain function so callers can run it alone with other sizes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "heisot/approximation.hpp"
#include "heisot/diagnostics.hpp"
#include "heisot/geodesic.hpp"
#include "heisot/random.hpp"
#include "heisot/transport.hpp"
#include "heisot/volume.hpp"

namespace heisot {

// ---------------------------------------------------------------------------
// Geometry

/// d(0, [zeta, 0]) = |zeta| and d(0, [0, t]) = sqrt(pi |t|).
inline CheckReport check_closed_form_distances(std::size_t n, std::size_t count, std::uint64_t seed,
                                               double tol = 1e-10) {
  CheckReport rep;
  rep.name = "closed_form_distances";
  rep.tolerance = tol;
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Point h = random_point(rng, n, 3.0);
    h.t = 0.0;
    rep.observe(std::abs(cc_norm(h) - norm(h.zeta)));
    const double t = uniform(rng, -5.0, 5.0);
    const Point c(CVector(n, Complex(0.0, 0.0)), t);
    rep.observe(std::abs(cc_norm(c) - std::sqrt(std::numbers::pi * std::abs(t))));
  }
  return rep.finish();
}

/// log(exp(chi, phi)) = (chi, phi) for |phi| < 2 pi - 0.01.
inline CheckReport check_log_exp_roundtrip(std::size_t n, std::size_t count, std::uint64_t seed, double tol = 1e-9) {
  CheckReport rep;
  rep.name = "log_exp_roundtrip";
  rep.tolerance = tol;
  Rng rng(seed);
  const double phi_max = 2.0 * std::numbers::pi - 0.01;
  for (std::size_t k = 0; k < count; ++k) {
    GeodesicParam g;
    g.chi.resize(n);
    for (auto& c : g.chi) c = Complex(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
    g.phi = uniform(rng, -phi_max, phi_max);
    if (norm(g.chi) < 1e-3) continue;
    const GeodesicParam back = log_geodesic(exp_geodesic(g, 1.0));
    double err = std::abs(back.phi - g.phi);
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(back.chi[j] - g.chi[j]));
    rep.observe(err);
  }
  return rep.finish();
}

/// Symmetry, triangle inequality, left invariance and dilation homogeneity on random tuples.
inline CheckReport check_metric_axioms(std::size_t n, std::size_t count, std::uint64_t seed, double tol = 1e-9) {
  CheckReport rep;
  rep.name = "metric_axioms";
  rep.tolerance = tol;
  Rng rng(seed);
  double worst_triangle = 0.0, worst_invariance = 0.0, worst_dilation = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const Point x = random_point(rng, n, 2.0), y = random_point(rng, n, 2.0);
    const Point z = random_point(rng, n, 2.0), g = random_point(rng, n, 2.0);
    const double r = uniform(rng, 0.2, 3.0);
    const double dxy = cc_distance(x, y);
    const double tri = cc_distance(x, z) - dxy - cc_distance(y, z);
    const double inv = std::abs(cc_distance(mul(g, x), mul(g, y)) - dxy);
    const double dil = std::abs(cc_distance(dilate(r, x), dilate(r, y)) - r * dxy) / std::max(1.0, r);
    worst_triangle = std::max(worst_triangle, tri);
    worst_invariance = std::max(worst_invariance, inv);
    worst_dilation = std::max(worst_dilation, dil);
    rep.observe(std::max({tri, inv, dil, std::abs(cc_distance(y, x) - dxy), cc_distance(x, x)}));
  }
  rep.metric("triangle_worst", worst_triangle);
  rep.metric("invariance_worst", worst_invariance);
  rep.metric("dilation_worst", worst_dilation);
  return rep.finish();
}

/// |grad_H d_y| = 1: analytic gradient at tol, central differences along X_j, Y_j at fd_tol.
inline CheckReport check_eikonal(std::size_t n, std::size_t count, std::uint64_t seed, double tol = 1e-9,
                                 double fd_tol = 1e-4) {
  CheckReport rep;
  rep.name = "eikonal";
  rep.tolerance = tol;
  Rng rng(seed);
  constexpr double h = 1e-5;
  double worst_analytic = 0.0, worst_fd = 0.0;
  std::size_t done = 0;
  while (done < count) {
    const Point x = random_point(rng, n, 2.0), y = random_point(rng, n, 2.0);
    if (norm(relative(y, x).zeta) < 0.05) continue;
    ++done;
    const double analytic = std::abs(norm(grad_distance(x, y).horizontal) - 1.0);
    double sq = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (const Complex dir : {Complex(h, 0.0), Complex(0.0, h)}) {
        Point step = Point::identity(n);
        step.zeta[j] = dir;
        const double diff = (cc_distance(mul(x, step), y) - cc_distance(mul(x, inv(step)), y)) / (2.0 * h);
        sq += diff * diff;
      }
    const double fd = std::abs(std::sqrt(sq) - 1.0);
    worst_analytic = std::max(worst_analytic, analytic);
    worst_fd = std::max(worst_fd, fd);
    rep.observe(analytic);
    rep.observe(fd, fd_tol);
  }
  rep.metric("analytic_worst", worst_analytic);
  rep.metric("finite_difference_worst", worst_fd);
  rep.metric("finite_difference_tolerance", fd_tol);
  return rep.finish();
}

/// |B(0, 2)| / |B(0, 1)| = 2^{2n+2} within 3 combined standard errors.
inline CheckReport check_ball_scaling(std::size_t n, std::size_t samples, std::uint64_t seed) {
  CheckReport rep;
  rep.name = "ball_scaling";
  rep.statistical = true;
  const VolumeEstimate one = estimate_ball_volume(n, 1.0, samples, seed);
  const VolumeEstimate two = estimate_ball_volume(n, 2.0, samples, seed + 1);
  const double ratio = two.value / one.value;
  const double se = ratio * std::hypot(one.std_error / one.value, two.std_error / two.value);
  const double expected = std::pow(2.0, 2.0 * static_cast<double>(n) + 2.0);
  rep.tolerance = 3.0 * se;
  rep.observe(std::abs(ratio - expected));
  rep.metric("volume_r1", one.value);
  rep.metric("volume_r1_se", one.std_error);
  rep.metric("volume_r2", two.value);
  rep.metric("ratio", ratio);
  rep.metric("ratio_se", se);
  rep.metric("expected", expected);
  return rep.finish();
}

// ---------------------------------------------------------------------------
// Transport

namespace detail {

inline AtomicMeasure random_weighted(Rng& rng, std::size_t count, std::size_t n) {
  std::vector<Point> atoms;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    atoms.push_back(random_point(rng, n, 1.0));
    w.push_back(uniform(rng, 0.05, 1.0));
    total += w.back();
  }
  for (double& v : w) v /= total;
  return AtomicMeasure(std::move(atoms), std::move(w));
}

}  // namespace detail

/// Primal-dual gap, dual feasibility and marginals of the exact solver on random instances
/// up to max_atoms x max_atoms (the last instance is the largest), plus 2- and 3-cycle
/// monotonicity of every plan.
inline std::vector<CheckReport> check_transport_duality(std::size_t instances, std::size_t max_atoms,
                                                        std::uint64_t seed, std::size_t n = 1, double tol = 1e-9) {
  CheckReport dual;
  dual.name = "lp_duality";
  dual.tolerance = tol;
  CheckReport cyc;
  cyc.name = "cyclical_monotonicity";
  cyc.tolerance = tol;
  Rng rng(seed);
  double worst_gap = 0.0, worst_feas = 0.0, worst_marg = 0.0;
  for (std::size_t q = 0; q < instances; ++q) {
    const bool last = q + 1 == instances;
    const std::size_t m = last ? max_atoms : 1 + (q * 17 + 3) % max_atoms;
    const std::size_t k = last ? max_atoms : 1 + (q * 29 + 7) % max_atoms;
    const AtomicMeasure mu = detail::random_weighted(rng, m, n);
    const AtomicMeasure nu = detail::random_weighted(rng, k, n);
    const CostMatrix c = cost_matrix(mu, nu, distance_cost);
    const KantorovichResult r = solve_kantorovich(mu, nu, c);
    const double gap = std::abs(r.value - r.dual_value);
    double feas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) feas = std::max(feas, r.dual.psi[i] + r.dual.psi_c[j] - c(i, j));
    const double marg = r.plan.marginal_error();
    worst_gap = std::max(worst_gap, gap);
    worst_feas = std::max(worst_feas, feas);
    worst_marg = std::max(worst_marg, marg);
    dual.observe(std::max({gap, feas, marg}));

    const CheckReport c2 = check_cyclical_monotonicity(r.plan, distance_cost, 3, 400, seed + q, tol);
    cyc.trials += c2.trials;
    cyc.violations += c2.violations;
    cyc.worst_violation = std::max(cyc.worst_violation, c2.worst_violation);
  }
  dual.metric("instances", static_cast<double>(instances));
  dual.metric("largest", static_cast<double>(max_atoms));
  dual.metric("gap_worst", worst_gap);
  dual.metric("dual_feasibility_worst", worst_feas);
  dual.metric("marginal_worst", worst_marg);
  return {dual.finish(), cyc.finish()};
}

/// solve_secondary against enumeration of all matchings on equal-size uniform instances
/// (k = 2..max_k), lexicographic in (int d, int d^2). Half of the instances are collinear
/// horizontal slots, where the primary problem has ties.
inline CheckReport check_secondary_enumeration(std::size_t max_k, std::size_t per_size, std::uint64_t seed,
                                               double tol = 1e-9) {
  detail::require(max_k >= 2 && max_k <= 8, "secondary enumeration: max_k must lie in [2, 8]");
  CheckReport rep;
  rep.name = "secondary_enumeration";
  rep.tolerance = tol;
  Rng rng(seed);
  for (std::size_t k = 2; k <= max_k; ++k)
    for (std::size_t q = 0; q < per_size; ++q) {
      std::vector<Point> xs, ys;
      if (q % 2 == 0) {
        std::vector<int> slots(8);
        for (int s = 0; s < 8; ++s) slots[static_cast<std::size_t>(s)] = s;
        std::shuffle(slots.begin(), slots.end(), rng);
        for (std::size_t a = 0; a < k; ++a) xs.push_back(Point({Complex(slots[a], 0.0)}, 0.0));
        std::shuffle(slots.begin(), slots.end(), rng);
        for (std::size_t a = 0; a < k; ++a) ys.push_back(Point({Complex(slots[a] + 0.5, 0.0)}, 0.0));
      } else {
        for (std::size_t a = 0; a < k; ++a) xs.push_back(random_point(rng, 1, 1.0));
        for (std::size_t a = 0; a < k; ++a) ys.push_back(random_point(rng, 1, 1.0));
      }
      const AtomicMeasure mu = AtomicMeasure::uniform(xs), nu = AtomicMeasure::uniform(ys);
      std::vector<std::size_t> perm(k);
      for (std::size_t a = 0; a < k; ++a) perm[a] = a;
      double best_d = std::numeric_limits<double>::infinity(), best_d2 = best_d;
      const double w = 1.0 / static_cast<double>(k);
      do {
        double d = 0.0, d2 = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
          const double v = cc_distance(xs[a], ys[perm[a]]);
          d += w * v;
          d2 += w * v * v;
        }
        if (d < best_d - 1e-12 || (d <= best_d + 1e-12 && d2 < best_d2)) {
          best_d = std::min(best_d, d);
          best_d2 = d2;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      const TransportPlan s = solve_secondary(mu, nu);
      rep.observe(std::max(std::abs(s.integral(distance_cost) - best_d),
                           std::abs(s.integral(squared_distance_cost) - best_d2)));
    }
  return rep.finish();
}

/// Monotone rays on the collinear secondary plan, plus the crossing matching as a control.
inline std::vector<CheckReport> check_rays_collinear(double tol = 1e-6) {
  std::vector<Point> xs, ys;
  for (int a = 0; a < 5; ++a) xs.push_back(Point({Complex(0.5 * a, 0.0)}, 0.0));
  for (int a = 0; a < 5; ++a) ys.push_back(Point({Complex(2.5 + 0.5 * a, 0.0)}, 0.0));
  const AtomicMeasure mu = AtomicMeasure::uniform(xs), nu = AtomicMeasure::uniform(ys);
  CheckReport ok = check_monotone_rays(solve_secondary(mu, nu), tol);
  ok.name = "monotone_rays_collinear";
  TransportPlan crossing{mu, nu, {}};
  for (std::size_t a = 0; a < 5; ++a) crossing.entries.push_back({a, 4 - a, 0.2});
  return {ok, negative_control(check_monotone_rays(crossing, tol))};
}

/// Lipschitz bound, tightness and gradient direction on a thin slab sent along the xi axis.
inline CheckReport check_potential_line_instance(std::uint64_t seed, std::size_t samples = 1000) {
  const auto mu = empirical(SampledMeasure::uniform_box(Box({0, -0.1, -0.1}, {1, 0.1, 0.1})), samples, seed);
  const AtomicMeasure nu = AtomicMeasure::uniform(
      {Point({Complex(2.0, 0.0)}, 0.0), Point({Complex(2.5, 0.0)}, 0.0), Point({Complex(3.0, 0.0)}, 0.0)});
  CheckReport rep = check_potential_lipschitz_and_gradient(solve_kantorovich(mu, nu));
  // The direction estimate gates here: at least 90% of entries above cosine 0.9.
  rep.observe(0.9 - rep.metric_value("gradient_agreement_fraction"), 0.0);
  return rep.finish();
}

// ---------------------------------------------------------------------------
// Density

/// Uniform mu on the unit box against five fixed atoms, with the reference schedule.
struct PipelineSetup {
  SampledMeasure mu = SampledMeasure::uniform_box(Box::cube(1, 0.0, 1.0));
  AtomicMeasure nu;
  std::vector<double> epsilons{0.5, 0.2, 0.1, 0.05, 0.02};
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
  /// Density bound of mu.
  double rho_max = 1.0;
};

inline PipelineSetup default_pipeline(std::uint64_t seed = 1) {
  PipelineSetup s;
  s.seed = seed;
  s.nu = AtomicMeasure::uniform({Point({Complex(0.2, 0.2)}, 0.2), Point({Complex(0.8, 0.2)}, 0.5),
                                 Point({Complex(0.2, 0.8)}, 0.8), Point({Complex(0.8, 0.8)}, 0.2),
                                 Point({Complex(0.5, 0.5)}, 0.5)});
  return s;
}

/// The W_1 gap is >= 0 and non-increasing, dispersion is non-increasing and small at the end.
inline CheckReport check_pipeline_convergence(const SequenceResult& seq, double tol = 1e-6,
                                              double final_dispersion = 0.05) {
  CheckReport rep;
  rep.name = "pipeline_convergence";
  rep.tolerance = tol;
  for (std::size_t k = 0; k < seq.steps.size(); ++k) {
    const auto& s = seq.steps[k];
    rep.observe(-s.w1_gap);
    if (k > 0) {
      rep.observe(s.w1_gap - seq.steps[k - 1].w1_gap);
      rep.observe(s.dispersion - seq.steps[k - 1].dispersion);
    }
  }
  if (!seq.steps.empty()) {
    rep.observe(seq.steps.back().dispersion - final_dispersion, 0.0);
    rep.metric("final_w1_gap", seq.steps.back().w1_gap);
    rep.metric("final_dispersion", seq.steps.back().dispersion);
  }
  rep.metric("w1_reference", seq.w1_reference);
  return rep.finish();
}

struct McpConfig {
  Box E;
  Point y;
  double t = 0.5;
  std::string label;
};

/// Three boxes away from L_y (where (1-t)^{2n+1} fails) and two touching L_y.
inline std::vector<McpConfig> default_mcp_configs() {
  const Box far({1, 1, 1}, {1.2, 1.2, 1.2});
  return {
      {far, Point({Complex(3, 3)}, 3), 0.5, "far_diagonal"},
      {far, Point({Complex(0.1, 0.05)}, 0), 0.5, "far_near_origin"},
      {far, Point({Complex(3, 3)}, 3), 0.25, "far_diagonal_quarter"},
      {Box({0, 0, 0.5}, {0.02, 0.02, 0.6}), Point::identity(1), 0.5, "center_adjacent"},
      {Box({-0.01, -0.01, 0.5}, {0.01, 0.01, 0.52}), Point::identity(1), 0.9, "center_straddling"},
  };
}

inline std::vector<CheckReport> check_mcp_configs(const std::vector<McpConfig>& configs, std::size_t samples,
                                                  std::uint64_t seed) {
  std::vector<CheckReport> out;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    CheckReport r = check_mcp_contraction(configs[k].E, configs[k].y, configs[k].t, samples, seed + k);
    r.name += "_" + configs[k].label;
    out.push_back(std::move(r));
  }
  return out;
}

/// Support pair whose source is closest (in coordinates) to the center of the mu box.
inline PlanEntry central_entry(const TransportPlan& gamma, const Box& box) {
  detail::require(!gamma.entries.empty(), "central_entry: empty plan");
  const auto c = box.center();
  PlanEntry best = gamma.entries.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& e : gamma.entries) {
    const auto x = gamma.source.atoms[e.i].coords();
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - c[k]) * (x[k] - c[k]);
    if (s < best_d) {
      best_d = s;
      best = e;
    }
  }
  return best;
}

/// Interpolant density at t = 1/2 with the shuffled plan recorded alongside, and the lower
/// density of the transport set at the central support pair with its vacuous counterpart.
inline std::vector<CheckReport> check_final_plan_density(const SequenceResult& seq, const PipelineSetup& setup,
                                                         const LowerDensityOptions& lower = {}) {
  detail::require(!seq.steps.empty(), "density checks: empty sequence");
  const TransportPlan& gamma = seq.steps.back().plan;
  std::vector<CheckReport> out;
  out.push_back(check_interpolant_density(gamma, 0.5, 0.2, setup.rho_max));
  CheckReport shuffled = check_interpolant_density(shuffle_targets(gamma, setup.seed), 0.5, 0.2, setup.rho_max);
  shuffled.name += "_shuffled";
  shuffled.informational = true;
  out.push_back(std::move(shuffled));

  const PlanEntry e = central_entry(gamma, setup.mu.support_box);
  const Point& x = gamma.source.atoms[e.i];
  out.push_back(check_transport_lower_density(gamma, x, gamma.target.atoms[e.j], 0.05, {0.4, 0.2, 0.1}, lower));
  LowerDensityOptions tiny = lower;
  tiny.samples = 1000;
  CheckReport vac = check_transport_lower_density(gamma, x, Point({Complex(5, 5)}, 5), 0.05, {0.4, 0.2, 0.1}, tiny);
  vac.name += "_vacuous";
  // The guard must report every delta as vacuous.
  vac.observe(static_cast<double>(3 - static_cast<int>(vac.metric_value("vacuous_deltas"))), 0.0);
  out.push_back(vac.finish());
  return out;
}

// ---------------------------------------------------------------------------
// Suites

struct SuiteResult {
  std::string name;
  std::vector<CheckReport> reports;
  bool pass = true;

  [[nodiscard]] std::vector<std::string> failed() const {
    std::vector<std::string> f;
    for (const auto& r : reports)
      if (!r.informational && !r.pass) f.push_back(r.name);
    return f;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"geometry", "transport", "density", "all"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed = 1, std::size_t n = 1) {
  detail::require(std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end(),
                  "unknown suite '" + name + "' (expected geometry, transport, density or all)");
  SuiteResult res;
  res.name = name;
  const bool all = name == "all";
  auto add = [&](CheckReport r) { res.reports.push_back(std::move(r)); };
  auto add_all = [&](std::vector<CheckReport> rs) {
    for (auto& r : rs) add(std::move(r));
  };
  if (all || name == "geometry") {
    add(check_closed_form_distances(n, 1000, seed));
    add(check_log_exp_roundtrip(n, 1000, seed + 1));
    add(check_metric_axioms(n, 10000, seed + 2));
    add(check_eikonal(n, 1000, seed + 3));
    add(check_nonbranching(1000, seed + 4, n));
    add(check_ball_scaling(n, kUnitBallSamples, seed + 5));
  }
  if (all || name == "transport") {
    add_all(check_transport_duality(50, 100, seed + 10, n));
    add(check_secondary_enumeration(6, 4, seed + 11));
    add_all(check_rays_collinear());
    add(check_potential_line_instance(seed + 12));
  }
  if (all || name == "density") {
    detail::require(n == 1, "the density suite is defined for n = 1");
    const PipelineSetup setup = default_pipeline(seed);
    const SequenceResult seq = run_approximation_sequence(setup.mu, setup.nu, setup.epsilons, setup.samples, seed);
    add(check_pipeline_convergence(seq));
    add(check_monotone_rays(seq.steps.back().plan));
    add_all(check_mcp_configs(default_mcp_configs(), 100000, seed + 20));
    add_all(check_final_plan_density(seq, setup));
  }
  res.pass = res.failed().empty();
  return res;
}

}  // namespace heisot

#endif  // HEISOT_SUITES_HPP
