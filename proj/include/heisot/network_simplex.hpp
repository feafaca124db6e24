#ifndef HEISOT_NETWORK_SIMPLEX_HPP
#define HEISOT_NETWORK_SIMPLEX_HPP

// Primal network simplex for uncapacitated min-cost flow:
//   minimize sum_e c_e f_e  subject to  out(u) - in(u) = supply(u),  f >= 0.
// Starts from an artificial star around an extra root node and keeps a strongly
// feasible spanning tree (Cunningham's leaving-arc rule), which rules out cycling.
// Block search pricing. The tree, its flows and its potentials are rebuilt from
// scratch after every pivot so floating-point drift cannot accumulate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "heisot/error.hpp"

namespace heisot {

class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t nodes) : supply_(nodes, 0.0) {}

  std::size_t add_arc(std::size_t from, std::size_t to, double cost) {
    detail::require(from < node_count() && to < node_count(), "min-cost flow: arc endpoint out of range");
    detail::require(std::isfinite(cost), "min-cost flow: arc costs must be finite");
    source_.push_back(from);
    target_.push_back(to);
    cost_.push_back(cost);
    return source_.size() - 1;
  }

  void set_supply(std::size_t node, double s) {
    detail::require(node < node_count(), "min-cost flow: node out of range");
    detail::require(std::isfinite(s), "min-cost flow: supplies must be finite");
    supply_[node] = s;
  }

  [[nodiscard]] std::size_t node_count() const { return supply_.size(); }
  [[nodiscard]] std::size_t arc_count() const { return source_.size(); }

  /// Runs the simplex. Throws ValidationError on unbalanced supplies and SolverError
  /// when the problem is infeasible or unbounded.
  void solve() {
    const std::size_t nv = node_count();
    const std::size_t na = arc_count();
    detail::require(nv > 0, "min-cost flow: empty network");

    double scale = 0.0, net = 0.0;
    std::size_t biggest = 0;
    for (std::size_t u = 0; u < nv; ++u) {
      scale += std::abs(supply_[u]);
      net += supply_[u];
      if (std::abs(supply_[u]) > std::abs(supply_[biggest])) biggest = u;
    }
    detail::require(std::abs(net) <= 1e-9 * std::max(1.0, scale), "min-cost flow: supplies do not balance");
    std::vector<double> supply = supply_;
    supply[biggest] -= net;

    double max_cost = 0.0;
    for (double c : cost_) max_cost = std::max(max_cost, std::abs(c));
    const double art_cost = (max_cost + 1.0) * static_cast<double>(nv + 1);
    tolerance_ = 8.0 * std::numeric_limits<double>::epsilon() * (art_cost + max_cost);

    // Artificial arcs na .. na+nv-1, root = nv.
    root_ = nv;
    arcs_ = na + nv;
    src_ = source_;
    dst_ = target_;
    cst_ = cost_;
    src_.resize(arcs_);
    dst_.resize(arcs_);
    cst_.resize(arcs_);
    for (std::size_t u = 0; u < nv; ++u) {
      const std::size_t e = na + u;
      if (supply[u] >= 0.0) {
        src_[e] = u;
        dst_[e] = root_;
        cst_[e] = 0.0;
      } else {
        src_[e] = root_;
        dst_[e] = u;
        cst_[e] = art_cost;
      }
    }
    in_tree_.assign(arcs_, false);
    for (std::size_t u = 0; u < nv; ++u) in_tree_[na + u] = true;
    flow_.assign(arcs_, 0.0);
    node_supply_ = supply;
    node_supply_.push_back(0.0);
    rebuild_tree();

    const std::size_t block = std::max<std::size_t>(10, static_cast<std::size_t>(std::sqrt(static_cast<double>(na))));
    std::size_t next_arc = 0;
    const std::size_t max_pivots = 1000 * (nv + na) + 10000;
    pivots_ = 0;
    while (na > 0) {
      const std::size_t entering = find_entering(block, next_arc);
      if (entering == kNone) break;
      pivot(entering);
      if (++pivots_ > max_pivots) throw SolverError("min-cost flow: pivot limit exceeded");
    }

    for (std::size_t u = 0; u < nv; ++u)
      if (flow_[na + u] > 1e-9 * std::max(1.0, scale))
        throw SolverError("min-cost flow: infeasible (supplies cannot be routed)");
    solved_ = true;
  }

  [[nodiscard]] double flow(std::size_t arc) const {
    check_solved();
    return flow_[arc];
  }
  /// Node potential pi with c_e + pi(from) - pi(to) >= 0 on every arc and = 0 on basic arcs.
  [[nodiscard]] double potential(std::size_t node) const {
    check_solved();
    return pi_[node] - pi_[0];
  }
  [[nodiscard]] double total_cost() const {
    check_solved();
    double s = 0.0;
    for (std::size_t e = 0; e < arc_count(); ++e) s += cost_[e] * flow_[e];
    return s;
  }
  [[nodiscard]] bool is_basic(std::size_t arc) const {
    check_solved();
    return in_tree_[arc];
  }
  [[nodiscard]] std::size_t pivots() const { return pivots_; }
  /// Reduced-cost threshold used for pricing.
  [[nodiscard]] double tolerance() const { return tolerance_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void check_solved() const {
    if (!solved_) throw SolverError("min-cost flow: solve() has not completed");
  }

  std::size_t find_entering(std::size_t block, std::size_t& next_arc) const {
    const std::size_t na = arc_count();
    double best = -tolerance_;
    std::size_t chosen = kNone;
    std::size_t count = block;
    for (std::size_t k = 0; k < na; ++k) {
      const std::size_t e = (next_arc + k) % na;
      if (!in_tree_[e]) {
        const double rc = cst_[e] + pi_[src_[e]] - pi_[dst_[e]];
        if (rc < best) {
          best = rc;
          chosen = e;
        }
      }
      if (--count == 0) {
        if (chosen != kNone) {
          next_arc = (e + 1) % na;
          return chosen;
        }
        count = block;
      }
    }
    return chosen;
  }

  void pivot(std::size_t entering) {
    const std::size_t first = src_[entering];
    const std::size_t second = dst_[entering];
    std::size_t a = first, b = second;
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
    }
    const std::size_t join = a;

    // Flow runs join -> first -> second -> join. Arcs pointing against it lose flow.
    double delta = std::numeric_limits<double>::infinity();
    std::size_t leaving = kNone;
    for (std::size_t u = first; u != join; u = parent_[u]) {
      const std::size_t e = pred_[u];
      if (src_[e] == u && flow_[e] < delta) {
        delta = flow_[e];
        leaving = e;
      }
    }
    for (std::size_t u = second; u != join; u = parent_[u]) {
      const std::size_t e = pred_[u];
      if (dst_[e] == u && flow_[e] <= delta) {
        delta = flow_[e];
        leaving = e;
      }
    }
    if (leaving == kNone) throw SolverError("min-cost flow: unbounded (negative cycle of uncapacitated arcs)");
    in_tree_[entering] = true;
    in_tree_[leaving] = false;
    flow_[leaving] = 0.0;
    rebuild_tree();
  }

  // BFS from the root over the tree arcs; then flows from the leaves up and potentials down.
  void rebuild_tree() {
    const std::size_t total = root_ + 1;
    adj_start_.assign(total + 1, 0);
    for (std::size_t e = 0; e < arcs_; ++e)
      if (in_tree_[e]) {
        ++adj_start_[src_[e] + 1];
        ++adj_start_[dst_[e] + 1];
      }
    for (std::size_t u = 0; u < total; ++u) adj_start_[u + 1] += adj_start_[u];
    adj_.resize(adj_start_[total]);
    fill_.assign(adj_start_.begin(), adj_start_.end() - 1);
    for (std::size_t e = 0; e < arcs_; ++e)
      if (in_tree_[e]) {
        adj_[fill_[src_[e]]++] = e;
        adj_[fill_[dst_[e]]++] = e;
      }

    parent_.assign(total, kNone);
    pred_.assign(total, kNone);
    depth_.assign(total, 0);
    pi_.assign(total, 0.0);
    order_.clear();
    order_.push_back(root_);
    parent_[root_] = root_;
    for (std::size_t k = 0; k < order_.size(); ++k) {
      const std::size_t u = order_[k];
      for (std::size_t idx = adj_start_[u]; idx < adj_start_[u + 1]; ++idx) {
        const std::size_t e = adj_[idx];
        const std::size_t v = (src_[e] == u) ? dst_[e] : src_[e];
        if (e == pred_[u]) continue;
        if (parent_[v] != kNone) throw SolverError("min-cost flow: basis contains a cycle");
        parent_[v] = u;
        pred_[v] = e;
        depth_[v] = depth_[u] + 1;
        pi_[v] = (src_[e] == u) ? pi_[u] + cst_[e] : pi_[u] - cst_[e];
        order_.push_back(v);
      }
    }
    if (order_.size() != total) throw SolverError("min-cost flow: basis is not a spanning tree");

    excess_ = node_supply_;
    for (std::size_t k = order_.size(); k-- > 1;) {
      const std::size_t u = order_[k];
      const std::size_t e = pred_[u];
      const double f = (src_[e] == u) ? excess_[u] : -excess_[u];
      flow_[e] = std::max(0.0, f);
      excess_[parent_[u]] += excess_[u];
    }
  }

  std::vector<double> supply_;
  std::vector<std::size_t> source_, target_;
  std::vector<double> cost_;

  std::size_t root_ = 0, arcs_ = 0, pivots_ = 0;
  double tolerance_ = 0.0;
  bool solved_ = false;
  std::vector<std::size_t> src_, dst_;
  std::vector<double> cst_, flow_, node_supply_, excess_, pi_;
  std::vector<bool> in_tree_;
  std::vector<std::size_t> adj_start_, adj_, fill_, parent_, pred_, depth_, order_;
};

}  // namespace heisot

#endif  // HEISOT_NETWORK_SIMPLEX_HPP
