#ifndef HEISOT_DIAGNOSTICS_HPP
#define HEISOT_DIAGNOSTICS_HPP

// Executable checks of the structural properties of minimal curves, optimal plans,
// their interpolants and transport sets. Every check is deterministic given its seed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "heisot/approximation.hpp"
#include "heisot/box.hpp"
#include "heisot/geodesic.hpp"
#include "heisot/measures.hpp"
#include "heisot/random.hpp"
#include "heisot/transport.hpp"
#include "heisot/volume.hpp"

namespace heisot {

struct CheckReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Largest observed excess of the checked inequality (0 when it always held).
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  /// Monte Carlo check judged against a standard-error band.
  bool statistical = false;
  /// Recorded only; never gates a suite.
  bool informational = false;
  std::string note;
  std::vector<std::pair<std::string, double>> metrics;

  /// One trial whose inequality is violated by `excess` (<= 0 when satisfied).
  void observe(double excess) { observe(excess, tolerance); }
  void observe(double excess, double band) {
    ++trials;
    worst_violation = std::max(worst_violation, excess);
    if (!(excess <= band)) ++violations;
  }
  void metric(std::string key, double value) { metrics.emplace_back(std::move(key), value); }
  [[nodiscard]] double metric_value(const std::string& key) const {
    for (const auto& [k, v] : metrics)
      if (k == key) return v;
    throw ValidationError("check report " + name + " has no metric " + key);
  }
  CheckReport& finish() {
    pass = violations == 0;
    return *this;
  }
};

/// Wraps a check run on a deliberately broken input: it passes iff the check caught the flaw.
inline CheckReport negative_control(CheckReport r) {
  const std::size_t detected = r.violations;
  r.name += "_control";
  r.metric("detected_violations", static_cast<double>(detected));
  r.violations = detected > 0 ? 0 : 1;
  r.note = detected > 0 ? "flaw detected" : "flaw not detected";
  return r.finish();
}

// ---------------------------------------------------------------------------
// Plans

/// Samples cycles (x_1,y_1)..(x_L,y_L) of support pairs, L in [2, max_cycle], and flags
/// sum c(x_k, y_k) > sum c(x_{k+1}, y_k) + tol.
inline CheckReport check_cyclical_monotonicity(const TransportPlan& gamma, const CostFunction& cost, int max_cycle,
                                               std::size_t trials, std::uint64_t seed, double tol = 1e-9) {
  detail::require(max_cycle >= 2 && max_cycle <= 4, "cyclical monotonicity: max_cycle must be 2, 3 or 4");
  CheckReport rep;
  rep.name = "cyclical_monotonicity";
  rep.tolerance = tol;
  const auto& s = gamma.entries;
  if (s.size() < 2) {
    rep.note = "fewer than two support pairs";
    return rep.finish();
  }
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
  const int longest = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(max_cycle), s.size()));
  std::uniform_int_distribution<int> length(2, longest);
  std::vector<std::size_t> cycle;
  for (std::size_t k = 0; k < trials; ++k) {
    const int len = length(rng);
    cycle.clear();
    while (cycle.size() < static_cast<std::size_t>(len)) {
      const std::size_t e = pick(rng);
      if (std::find(cycle.begin(), cycle.end(), e) == cycle.end()) cycle.push_back(e);
    }
    double kept = 0.0, swapped = 0.0;
    for (std::size_t q = 0; q < cycle.size(); ++q) {
      const auto& a = s[cycle[q]];
      const auto& b = s[cycle[(q + 1) % cycle.size()]];
      kept += cost(gamma.source.atoms[a.i], gamma.target.atoms[a.j]);
      swapped += cost(gamma.source.atoms[b.i], gamma.target.atoms[a.j]);
    }
    rep.observe(kept - swapped);
  }
  return rep.finish();
}

/// For support pairs (x, y), (x', y') with x != y, x != x' and x' on a minimal curve from x
/// to y (d(x,x') + d(x',y) - d(x,y) < tol), checks that x, x', y, y' lie in that order on one
/// minimal curve: d(x,y) + d(y,y') = d(x,y'), d(x,x') + d(x',y') = d(x,y') and d(x',y') >= d(x',y).
inline CheckReport check_monotone_rays(const TransportPlan& gamma, double tol = 1e-6) {
  CheckReport rep;
  rep.name = "monotone_rays";
  rep.tolerance = tol;
  const auto& src = gamma.source.atoms;
  const auto& dst = gamma.target.atoms;
  std::vector<double> len(gamma.entries.size());
  for (std::size_t e = 0; e < gamma.entries.size(); ++e)
    len[e] = cc_distance(src[gamma.entries[e].i], dst[gamma.entries[e].j]);
  std::size_t candidates = 0;
  for (std::size_t a = 0; a < gamma.entries.size(); ++a) {
    const auto& ea = gamma.entries[a];
    if (len[a] == 0.0) continue;
    const Point& x = src[ea.i];
    const Point& y = dst[ea.j];
    for (std::size_t b = 0; b < gamma.entries.size(); ++b) {
      const auto& eb = gamma.entries[b];
      const Point& xp = src[eb.i];
      if (eb.i == ea.i || xp == x) continue;
      if (cc_distance_lower_bound(x, xp) + cc_distance_lower_bound(xp, y) >= len[a] + tol) continue;
      ++candidates;
      const double d_xxp = cc_distance(x, xp);
      const double d_xpy = cc_distance(xp, y);
      if (d_xxp + d_xpy - len[a] >= tol) continue;
      const Point& yp = dst[eb.j];
      const double d_xyp = cc_distance(x, yp);
      const double d_xpyp = cc_distance(xp, yp);
      const double e1 = std::abs(len[a] + cc_distance(y, yp) - d_xyp);
      const double e2 = std::abs(d_xxp + d_xpyp - d_xyp);
      const double e3 = d_xpy - d_xpyp;
      rep.observe(std::max({e1, e2, e3}));
    }
  }
  rep.metric("incidences", static_cast<double>(rep.trials));
  rep.metric("exact_distance_candidates", static_cast<double>(candidates));
  if (rep.trials == 0) rep.note = "no ray incidences (vacuous)";
  return rep.finish();
}

/// Plan with the targets of its entries randomly permuted; keeps both marginals when all
/// entries carry equal mass.
inline TransportPlan shuffle_targets(const TransportPlan& gamma, std::uint64_t seed) {
  TransportPlan out = gamma;
  std::vector<std::size_t> js;
  for (const auto& e : gamma.entries) js.push_back(e.j);
  Rng rng(seed);
  std::shuffle(js.begin(), js.end(), rng);
  for (std::size_t k = 0; k < js.size(); ++k) out.entries[k].j = js[k];
  return out;
}

// ---------------------------------------------------------------------------
// Potentials

struct GradientCheckOptions {
  std::size_t neighbours = 12;
  double cosine_threshold = 0.9;
};

/// (a) 1-Lipschitz bound of the c-transform potential u on all support points,
/// (b) u(x) - u(y) = d(x, y) on plan entries, (c) direction of the fitted horizontal
/// gradient of u against the curve parameter: chi = -d(x, y) grad_H u(x).
/// (c) is reported as metrics; pass/fail covers (a) and (b).
inline CheckReport check_potential_lipschitz_and_gradient(const KantorovichResult& r,
                                                          const GradientCheckOptions& opt = {}, double tol = 1e-9) {
  CheckReport rep;
  rep.name = "potential_lipschitz_gradient";
  rep.tolerance = tol;
  const auto& gamma = r.plan;
  const LipschitzPotential u = lipschitz_potential(r);
  const std::size_t m = gamma.source.size();

  std::vector<Point> pts = gamma.source.atoms;
  pts.insert(pts.end(), gamma.target.atoms.begin(), gamma.target.atoms.end());
  std::vector<double> val(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) val[k] = u(pts[k]);
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double gap = std::abs(val[a] - val[b]);
      if (gap <= cc_distance_lower_bound(pts[a], pts[b])) {
        rep.observe(0.0);
        continue;
      }
      rep.observe(gap - cc_distance(pts[a], pts[b]));
    }
  const std::size_t lipschitz_trials = rep.trials;
  double worst_tight = 0.0;
  for (const auto& e : gamma.entries) {
    const double excess = std::abs(val[e.i] - val[m + e.j] - cc_distance(gamma.source.atoms[e.i], gamma.target.atoms[e.j]));
    worst_tight = std::max(worst_tight, excess);
    rep.observe(excess);
  }
  rep.metric("lipschitz_pairs", static_cast<double>(lipschitz_trials));
  rep.metric("tightness_worst", worst_tight);

  // (c) least-squares fit u(x_k) - u(x) ~ <g, zeta(x^{-1} x_k)> + g_t t(x^{-1} x_k) over the
  // nearest source atoms in coordinate distance.
  const std::size_t n = gamma.source.n();
  const std::size_t k_nb = std::min(opt.neighbours, m > 0 ? m - 1 : 0);
  std::size_t fitted = 0, agreeing = 0;
  double cos_sum = 0.0;
  if (k_nb >= 2 * n + 1) {
    std::vector<std::vector<double>> coords(m);
    for (std::size_t i = 0; i < m; ++i) coords[i] = gamma.source.atoms[i].coords();
    std::vector<std::pair<double, std::size_t>> dist(m);
    for (const auto& e : gamma.entries) {
      const Point& x = gamma.source.atoms[e.i];
      const Point& y = gamma.target.atoms[e.j];
      if (!is_in_omega(x, y)) continue;
      for (std::size_t k = 0; k < m; ++k) {
        double s = 0.0;
        for (std::size_t c = 0; c < coords[k].size(); ++c) s += (coords[k][c] - coords[e.i][c]) * (coords[k][c] - coords[e.i][c]);
        dist[k] = {s, k};
      }
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_nb + 1), dist.end());
      Eigen::MatrixXd A(k_nb, 2 * n + 1);
      Eigen::VectorXd rhs(k_nb);
      std::size_t row = 0;
      for (std::size_t q = 0; q <= k_nb && row < k_nb; ++q) {
        const std::size_t k = dist[q].second;
        if (k == e.i) continue;
        const Point w = relative(x, gamma.source.atoms[k]);
        for (std::size_t j = 0; j < n; ++j) {
          A(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = w.zeta[j].real();
          A(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(n + j)) = w.zeta[j].imag();
        }
        A(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(2 * n)) = w.t;
        rhs(static_cast<Eigen::Index>(row)) = val[k] - val[e.i];
        ++row;
      }
      const Eigen::VectorXd g = A.colPivHouseholderQr().solve(rhs);
      const GeodesicParam p = log_geodesic(relative(x, y));
      double dot = 0.0, gn = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        dot -= p.chi[j].real() * g(static_cast<Eigen::Index>(j)) + p.chi[j].imag() * g(static_cast<Eigen::Index>(n + j));
        gn += g(static_cast<Eigen::Index>(j)) * g(static_cast<Eigen::Index>(j)) +
              g(static_cast<Eigen::Index>(n + j)) * g(static_cast<Eigen::Index>(n + j));
      }
      const double cosine = dot / (norm(p.chi) * std::sqrt(gn));
      if (!std::isfinite(cosine)) continue;
      ++fitted;
      cos_sum += cosine;
      if (cosine > opt.cosine_threshold) ++agreeing;
    }
  }
  rep.metric("gradient_entries", static_cast<double>(fitted));
  rep.metric("gradient_mean_cosine", fitted ? cos_sum / static_cast<double>(fitted) : 0.0);
  rep.metric("gradient_agreement_fraction", fitted ? static_cast<double>(agreeing) / static_cast<double>(fitted) : 0.0);
  return rep.finish();
}

// ---------------------------------------------------------------------------
// Minimal curves

/// For random (x, y) in Omega, the curve from x through the midpoint z must continue to y,
/// and perturbed parameters of the same length must not reach z from x while ending elsewhere.
/// Pairs on the center line (infinitely many minimal curves) are drawn separately and only counted.
inline CheckReport check_nonbranching(std::size_t trials, std::uint64_t seed, std::size_t n = 1,
                                      std::size_t perturbations = 16, double tol = 1e-6) {
  CheckReport rep;
  rep.name = "nonbranching";
  rep.tolerance = tol;
  Rng rng(seed);
  std::size_t center_pairs = 0, continuation_checks = 0;
  double worst_continuation = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const Point x = random_point(rng, n, 1.0);
    if (k % 10 == 9) {
      // Center-line pair: excluded from the check.
      const Point y = mul(x, Point(CVector(n, Complex(0.0, 0.0)), uniform(rng, 0.1, 1.0)));
      if (!is_in_omega(x, y)) ++center_pairs;
      continue;
    }
    const Point y = random_point(rng, n, 1.0);
    if (!is_in_omega(x, y)) {
      ++center_pairs;
      continue;
    }
    const Point z = eval_curve(x, y, 0.5);
    const GeodesicParam half = log_geodesic(relative(x, z));
    GeodesicParam full{half.chi, 2.0 * half.phi};
    for (auto& c : full.chi) c *= 2.0;
    const Point continued = mul(x, exp_geodesic(full, 1.0));
    const double cont_err = max_coord_diff(continued, y);
    worst_continuation = std::max(worst_continuation, cont_err);
    ++continuation_checks;
    rep.observe(cont_err);

    const GeodesicParam p = log_geodesic(relative(x, y));
    const double len = norm(p.chi);
    for (std::size_t q = 0; q < perturbations; ++q) {
      const double scale = std::pow(10.0, -1.0 - static_cast<double>(q % 6));
      GeodesicParam alt = p;
      for (auto& c : alt.chi) c += Complex(uniform(rng, -scale, scale), uniform(rng, -scale, scale));
      alt.phi = std::clamp(p.phi + uniform(rng, -scale, scale), -detail::kTwoPi + 1e-9, detail::kTwoPi - 1e-9);
      const double alt_len = norm(alt.chi);
      for (auto& c : alt.chi) c *= len / alt_len;
      const Point alt_end = mul(x, exp_geodesic(alt, 1.0));
      const Point alt_mid = mul(x, exp_geodesic(alt, 0.5));
      // A branch: same midpoint (to 1e-12) but an endpoint further than tol from y.
      const bool same_mid = cc_distance(alt_mid, z) < 1e-12;
      const double split = cc_distance(alt_end, y);
      rep.observe(same_mid ? split : 0.0);
    }
  }
  rep.metric("continuation_checks", static_cast<double>(continuation_checks));
  rep.metric("continuation_worst", worst_continuation);
  rep.metric("center_pairs_excluded", static_cast<double>(center_pairs));
  return rep.finish();
}

// ---------------------------------------------------------------------------
// Measure contraction

/// Monte Carlo check of |E| <= (1-t)^{-(2n+3)} |(e_t o S)(E, y)| for a box E.
/// The image volume is a hit-or-miss estimate over a box around forward-mapped samples; a point
/// z is in the image iff the curve from y through z, stretched by 1/(1-t), ends in E.
inline CheckReport check_mcp_contraction(const Box& E, const Point& y, double t, std::size_t samples,
                                         std::uint64_t seed) {
  detail::require(t > 0.0 && t < 1.0, "mcp check: t must lie in (0, 1)");
  detail::require(E.volume() > 0.0, "mcp check: E must have positive volume");
  detail::require(y.ambient_dim() == E.dim(), "mcp check: dimension mismatch");
  CheckReport rep;
  rep.name = "mcp_contraction";
  rep.statistical = true;
  const std::size_t n = E.n();
  Rng rng(seed);

  const std::size_t forward = std::max<std::size_t>(2000, samples / 5);
  std::vector<Point> images;
  images.reserve(forward + (std::size_t{1} << E.dim()));
  for (std::size_t k = 0; k < forward; ++k) images.push_back(eval_curve(E.sample(rng), y, t));
  for (std::size_t mask = 0; mask < (std::size_t{1} << E.dim()); ++mask) {
    std::vector<double> c(E.dim());
    for (std::size_t q = 0; q < E.dim(); ++q) c[q] = (mask >> q) & 1 ? E.hi[q] : E.lo[q];
    images.push_back(eval_curve(Point::from_coords(c), y, t));
  }
  const Box image_box = Box::bounding(images).inflated(0.1, 1e-9);

  const double stretch = 1.0 / (1.0 - t);
  const auto in_image = [&](const Point& z) {
    const Point w = relative(y, z);
    if (norm(w.zeta) <= kOmegaTolerance) return false;
    GeodesicParam p = log_geodesic(w);
    p.phi *= stretch;
    if (std::abs(p.phi) >= detail::kTwoPi) return false;
    for (auto& c : p.chi) c *= stretch;
    return E.contains(mul(y, exp_geodesic(p, 1.0)));
  };
  std::size_t mismatched = 0;
  for (std::size_t k = 0; k < std::min<std::size_t>(images.size(), 500); ++k)
    if (!in_image(images[k])) ++mismatched;

  const VolumeEstimate img = hit_or_miss_volume(image_box, in_image, samples, rng);
  const double vol_e = E.volume();
  const double sharp = std::pow(1.0 - t, 2.0 * static_cast<double>(n) + 3.0);
  const double naive = std::pow(1.0 - t, 2.0 * static_cast<double>(n) + 1.0);
  rep.tolerance = 3.0 * img.std_error;
  rep.observe(sharp * vol_e - img.value, rep.tolerance);
  rep.metric("t", t);
  rep.metric("volume_E", vol_e);
  rep.metric("volume_image", img.value);
  rep.metric("volume_image_se", img.std_error);
  rep.metric("ratio", img.value / vol_e);
  rep.metric("bound_2n_plus_3", sharp);
  rep.metric("bound_2n_plus_1", naive);
  rep.metric("naive_bound_holds", img.value + 3.0 * img.std_error >= naive * vol_e ? 1.0 : 0.0);
  rep.metric("forward_images_rejected", static_cast<double>(mismatched));
  return rep.finish();
}

// ---------------------------------------------------------------------------
// Interpolant density

/// Histogram of (e_t o S)_# gamma against (1-t)^{-(2n+3)} rho_max. Each cell may exceed the
/// bound by 3 binomial standard deviations of its count under the bound, using the source's
/// effective sample size 1 / sum w_i^2.
inline CheckReport check_interpolant_density(const TransportPlan& gamma, double t, double h, double rho_max) {
  detail::require(t >= 0.0 && t < 1.0, "interpolant density: t must lie in [0, 1)");
  detail::require(h > 0.0 && rho_max > 0.0, "interpolant density: h and rho_max must be positive");
  CheckReport rep;
  rep.name = "interpolant_density";
  rep.statistical = true;
  const AtomicMeasure interp = interpolate(gamma, t);
  const std::size_t n = interp.n();
  const HistogramGrid grid = HistogramGrid::covering(Box::bounding(interp.atoms).inflated(0.0, 1e-9), h);
  const DensityField f = histogram_density(interp, grid);

  double w2 = 0.0;
  for (double w : gamma.source.weights) w2 += w * w;
  const double n_eff = 1.0 / w2;
  const double bound = rho_max * std::pow(1.0 - t, -(2.0 * static_cast<double>(n) + 3.0));
  const double vol = grid.cell_volume();
  const double p = std::min(1.0, bound * vol);
  const double band = 3.0 * std::sqrt(p * (1.0 - p) / n_eff) / vol;
  rep.tolerance = band;
  for (double v : f.values) rep.observe(v - bound, band);
  rep.metric("t", t);
  rep.metric("h", h);
  rep.metric("max_density", f.max());
  rep.metric("bound", bound);
  rep.metric("slack", band / bound);
  rep.metric("threshold", bound + band);
  rep.metric("effective_samples", n_eff);
  rep.metric("cells", static_cast<double>(f.values.size()));
  return rep.finish();
}

// ---------------------------------------------------------------------------
// Transport set lower density

struct LowerDensityOptions {
  std::size_t samples = 200000;
  double tube_fraction = 1.0 / 20.0;
  int curve_samples = 64;
  std::uint64_t seed = 1;
};

/// Uniform point of B(x, r) = x . delta_r(B(0, 1)) by rejection from the unit ball's box.
inline Point sample_ball(Rng& rng, const Point& x, double r) {
  const Box unit = ball_bounding_box(x.n(), 1.0);
  for (;;) {
    const Point w = unit.sample(rng);
    if (cc_norm(w) <= 1.0) return mul(x, dilate(r, w));
  }
}

/// For each delta, the fraction of B(x, delta) covered by the transport set of the support
/// pairs (x', y') with d(x', x) < delta/2 and d(y', y) < r, realized as tubes of radius
/// tube_fraction * delta around the curves. Only the arc s in [0, s_max] that can reach the
/// ball is sampled, with s_max = (delta + tube + d(x, x')) / d(x', y').
inline CheckReport check_transport_lower_density(const TransportPlan& gamma, const Point& x, const Point& y, double r,
                                                 const std::vector<double>& deltas,
                                                 const LowerDensityOptions& opt = {}) {
  detail::require(!deltas.empty(), "lower density: empty delta list");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    detail::require(deltas[k] > 0.0, "lower density: deltas must be positive");
    if (k > 0) detail::require(deltas[k] < deltas[k - 1], "lower density: deltas must decrease");
  }
  detail::require(r > 0.0, "lower density: r must be positive");
  detail::require(opt.curve_samples >= 2 && opt.samples > 0, "lower density: bad sampling options");
  CheckReport rep;
  rep.name = "transport_lower_density";
  rep.statistical = true;
  Rng rng(opt.seed);
  double floor = std::numeric_limits<double>::infinity();
  std::size_t vacuous = 0;
  for (double delta : deltas) {
    const double tube = opt.tube_fraction * delta;
    std::vector<Point> beads;
    std::size_t qualifying = 0;
    for (const auto& e : gamma.entries) {
      const Point& xp = gamma.source.atoms[e.i];
      const Point& yp = gamma.target.atoms[e.j];
      const double dx = cc_distance(xp, x);
      if (dx >= delta / 2.0 || cc_distance(yp, y) >= r) continue;
      ++qualifying;
      const double len = cc_distance(xp, yp);
      if (len == 0.0) {
        beads.push_back(xp);
        continue;
      }
      const double s_max = std::min(1.0, (delta + tube + dx) / len);
      const MinimalCurve c = minimal_curve(xp, yp);
      for (int q = 0; q < opt.curve_samples; ++q)
        beads.push_back(c.eval(s_max * static_cast<double>(q) / (opt.curve_samples - 1)));
    }
    const std::string tag = std::to_string(delta);
    rep.metric("qualifying_pairs_" + tag, static_cast<double>(qualifying));
    if (qualifying == 0) {
      ++vacuous;
      rep.metric("ratio_" + tag, 0.0);
      continue;
    }
    std::size_t hits = 0;
    for (std::size_t k = 0; k < opt.samples; ++k) {
      const Point z = sample_ball(rng, x, delta);
      for (const auto& b : beads) {
        if (cc_distance_lower_bound(z, b) >= tube) continue;
        if (cc_distance(z, b) < tube) {
          ++hits;
          break;
        }
      }
    }
    const double ratio = static_cast<double>(hits) / static_cast<double>(opt.samples);
    rep.metric("ratio_" + tag, ratio);
    rep.metric("ratio_se_" + tag, std::sqrt(ratio * (1.0 - ratio) / static_cast<double>(opt.samples)));
    floor = std::min(floor, ratio);
    // Collapse: no sample of the ball hit the transport set.
    rep.observe(hits == 0 ? 1.0 : 0.0, 0.0);
  }
  rep.tolerance = opt.tube_fraction;
  rep.metric("tube_fraction", opt.tube_fraction);
  rep.metric("vacuous_deltas", static_cast<double>(vacuous));
  rep.metric("floor", std::isfinite(floor) ? floor : 0.0);
  if (vacuous == deltas.size()) rep.note = "no qualifying support pairs (vacuous)";
  return rep.finish();
}

}  // namespace heisot

#endif  // HEISOT_DIAGNOSTICS_HPP
