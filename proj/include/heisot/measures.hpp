#ifndef HEISOT_MEASURES_HPP
#define HEISOT_MEASURES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heisot/box.hpp"
#include "heisot/geodesic.hpp"
#include "heisot/random.hpp"
#include "heisot/volume.hpp"

namespace heisot {

inline constexpr double kMassTolerance = 1e-12;
inline constexpr double kDuplicateTolerance = 1e-12;

/// Finitely supported probability measure sum_i w_i delta_{x_i}.
struct AtomicMeasure {
  std::vector<Point> atoms;
  std::vector<double> weights;

  AtomicMeasure() = default;

  /// Validating constructor; see validate().
  AtomicMeasure(std::vector<Point> a, std::vector<double> w) : atoms(std::move(a)), weights(std::move(w)) {
    validate();
  }

  static AtomicMeasure dirac(Point x) { return AtomicMeasure({std::move(x)}, {1.0}); }

  static AtomicMeasure uniform(std::vector<Point> points) {
    detail::require(!points.empty(), "measure: no atoms");
    const double w = 1.0 / static_cast<double>(points.size());
    std::vector<double> weights(points.size(), w);
    return AtomicMeasure(std::move(points), std::move(weights));
  }

  /// Sums the weights of identical points (first-occurrence order) and drops zero weights.
  static AtomicMeasure merged(std::span<const Point> points, std::span<const double> weights) {
    detail::require(points.size() == weights.size(), "measure: atoms/weights length mismatch");
    std::map<std::vector<double>, std::size_t> index;
    std::vector<Point> atoms;
    std::vector<double> mass;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      auto [it, fresh] = index.try_emplace(points[i].coords(), atoms.size());
      if (fresh) {
        atoms.push_back(points[i]);
        mass.push_back(weights[i]);
      } else {
        mass[it->second] += weights[i];
      }
    }
    return AtomicMeasure(std::move(atoms), std::move(mass));
  }

  [[nodiscard]] std::size_t size() const { return atoms.size(); }
  [[nodiscard]] std::size_t n() const { return atoms.empty() ? 0 : atoms.front().n(); }
  [[nodiscard]] double total_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

  /// Checks: non-empty, one dimension, finite atoms, weights >= 0 summing to 1, no duplicate atoms.
  void validate() const {
    detail::require(!atoms.empty(), "measure: no atoms");
    detail::require(atoms.size() == weights.size(), "measure: atoms/weights length mismatch");
    const std::size_t dim = atoms.front().n();
    detail::require(dim >= 1, "measure: atoms must have n >= 1");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      detail::require(atoms[i].n() == dim, "measure: atoms of different dimension");
      detail::require(atoms[i].is_finite(), "measure: non-finite atom");
      detail::require(std::isfinite(weights[i]) && weights[i] >= 0.0, "measure: weights must be finite and >= 0");
    }
    detail::require(std::abs(total_mass() - 1.0) <= kMassTolerance, "measure: weights must sum to 1");
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<double>> coords(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) coords[i] = atoms[i].coords();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return coords[a] < coords[b]; });
    // Near-duplicates share their leading coordinate up to the tolerance; scan that window.
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        if (coords[order[b]][0] - coords[order[a]][0] > kDuplicateTolerance) break;
        detail::require(max_coord_diff(atoms[order[a]], atoms[order[b]]) > kDuplicateTolerance,
                        "measure: duplicate atoms");
      }
    }
  }
};

/// Absolutely continuous probability measure known through a sampler and its density.
struct SampledMeasure {
  std::function<Point(Rng&)> sampler;
  std::function<double(const Point&)> density;
  Box support_box;
  /// Essential supremum of the density.
  double density_sup = 0.0;

  static SampledMeasure uniform_box(const Box& box) {
    const double vol = box.volume();
    detail::require(vol > 0.0, "uniform measure needs a box of positive volume");
    SampledMeasure m;
    m.sampler = [box](Rng& rng) { return box.sample(rng); };
    m.density = [box, vol](const Point& p) { return box.contains(p) ? 1.0 / vol : 0.0; };
    m.support_box = box;
    m.density_sup = 1.0 / vol;
    return m;
  }
};

/// Monte Carlo integral of the density over its support box.
inline VolumeEstimate integrate_density(const SampledMeasure& mu, std::size_t samples, std::uint64_t seed) {
  detail::require(samples > 1, "integrate_density: need at least two samples");
  Rng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double f = mu.density(mu.support_box.sample(rng));
    sum += f;
    sum_sq += f * f;
  }
  const double m = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - m * m);
  const double vol = mu.support_box.volume();
  return {vol * m, vol * std::sqrt(var / static_cast<double>(samples)), samples, 0};
}

/// N i.i.d. samples with weights 1/N; deterministic for a given seed.
inline AtomicMeasure empirical(const SampledMeasure& mu, std::size_t count, std::uint64_t seed) {
  detail::require(count >= 1, "empirical: N must be at least 1");
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(mu.sampler(rng));
  return AtomicMeasure::uniform(std::move(pts));
}

/// Greedy 1/m-net F_m with the projection p_m onto it.
class QuantizationMap {
 public:
  QuantizationMap(std::vector<Point> net, int m) : net_(std::move(net)), m_(m), radius_(1.0 / m) {}

  [[nodiscard]] const std::vector<Point>& net() const { return net_; }
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] double scale() const { return radius_; }
  [[nodiscard]] std::size_t size() const { return net_.size(); }

  /// p_m(x): the first net point (in net order) strictly within 1/m of x, if any.
  [[nodiscard]] std::optional<std::size_t> assign(const Point& x) const {
    for (std::size_t i = 0; i < net_.size(); ++i) {
      if (cc_distance_lower_bound(net_[i], x) >= radius_) continue;
      if (cc_distance(net_[i], x) < radius_) return i;
    }
    return std::nullopt;
  }

 private:
  std::vector<Point> net_;
  int m_;
  double radius_;
};

/// Greedy net over `points` in input order: a point joins the net unless an earlier net
/// point lies strictly within 1/m of it. Net points are therefore mutually >= 1/m apart.
inline QuantizationMap quantize(std::span<const Point> points, int m) {
  detail::require(m >= 1, "quantize: m must be at least 1");
  detail::require(!points.empty(), "quantize: empty point set");
  std::vector<Point> net;
  const double radius = 1.0 / m;
  for (const auto& p : points) {
    bool covered = false;
    for (const auto& c : net) {
      if (cc_distance_lower_bound(c, p) >= radius) continue;
      if (cc_distance(c, p) < radius) {
        covered = true;
        break;
      }
    }
    if (!covered) net.push_back(p);
  }
  return QuantizationMap(std::move(net), m);
}

/// card(F_m) m^{-(2n+2)}, the constant in the packing bound card(F_m) <= C m^{2n+2}.
inline double packing_constant(std::size_t card, int m, std::size_t n) {
  return static_cast<double>(card) / std::pow(static_cast<double>(m), 2.0 * static_cast<double>(n) + 2.0);
}

/// (p_m)_# nu. Every atom of nu must be covered by the net.
inline AtomicMeasure pushforward_quantize(const AtomicMeasure& nu, const QuantizationMap& q) {
  std::vector<double> mass(q.size(), 0.0);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const auto k = q.assign(nu.atoms[i]);
    detail::require(k.has_value(), "pushforward_quantize: atom outside the quantization coverage");
    mass[*k] += nu.weights[i];
  }
  std::vector<Point> atoms;
  std::vector<double> weights;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (mass[k] <= 0.0) continue;
    atoms.push_back(q.net()[k]);
    weights.push_back(mass[k]);
  }
  return AtomicMeasure(std::move(atoms), std::move(weights));
}

/// (p_m)_# of the uniform measure on a sample cloud.
inline AtomicMeasure pushforward_quantize(std::span<const Point> cloud, const QuantizationMap& q) {
  return pushforward_quantize(AtomicMeasure::uniform({cloud.begin(), cloud.end()}), q);
}

/// Regular grid of cubical cells of side h anchored at `origin`.
struct HistogramGrid {
  std::vector<double> origin;
  double h = 1.0;
  std::vector<std::size_t> cells;

  /// Smallest grid of side-h cells anchored at box.lo that covers the box.
  static HistogramGrid covering(const Box& box, double h) {
    detail::require(h > 0.0, "histogram: cell size must be positive");
    HistogramGrid g;
    g.origin = box.lo;
    g.h = h;
    g.cells.resize(box.dim());
    for (std::size_t k = 0; k < box.dim(); ++k) {
      const double width = box.hi[k] - box.lo[k];
      g.cells[k] = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(width / h - 1e-12)));
    }
    return g;
  }

  [[nodiscard]] std::size_t cell_count() const {
    std::size_t c = 1;
    for (auto k : cells) c *= k;
    return c;
  }
  [[nodiscard]] double cell_volume() const { return std::pow(h, static_cast<double>(cells.size())); }

  [[nodiscard]] std::optional<std::size_t> index(const Point& p) const {
    if (p.ambient_dim() != cells.size()) return std::nullopt;
    const auto c = p.coords();
    std::size_t flat = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double u = (c[k] - origin[k]) / h;
      if (u < 0.0) return std::nullopt;
      auto cell = static_cast<std::size_t>(std::floor(u));
      if (cell == cells[k] && u <= static_cast<double>(cells[k]) * (1.0 + 1e-14)) cell = cells[k] - 1;
      if (cell >= cells[k]) return std::nullopt;
      flat = flat * cells[k] + cell;
    }
    return flat;
  }

  [[nodiscard]] std::vector<double> cell_center(std::size_t flat) const {
    std::vector<double> c(cells.size());
    for (std::size_t k = cells.size(); k-- > 0;) {
      const std::size_t cell = flat % cells[k];
      flat /= cells[k];
      c[k] = origin[k] + (static_cast<double>(cell) + 0.5) * h;
    }
    return c;
  }
};

/// Piecewise-constant density: mass in each cell divided by the cell volume.
struct DensityField {
  HistogramGrid grid;
  std::vector<double> values;

  [[nodiscard]] double max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }
  [[nodiscard]] double integral() const {
    return std::accumulate(values.begin(), values.end(), 0.0) * grid.cell_volume();
  }
};

inline DensityField histogram_density(const AtomicMeasure& mu, const HistogramGrid& grid) {
  DensityField f{grid, std::vector<double>(grid.cell_count(), 0.0)};
  const double vol = grid.cell_volume();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto k = grid.index(mu.atoms[i]);
    detail::require(k.has_value(), "histogram_density: atom outside the grid");
    f.values[*k] += mu.weights[i] / vol;
  }
  return f;
}

}  // namespace heisot

#endif  // HEISOT_MEASURES_HPP
