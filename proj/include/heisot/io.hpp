#ifndef HEISOT_IO_HPP
#define HEISOT_IO_HPP

// JSON for points, measures, plans and check reports; CSV for curves, histograms,
// the epsilon ledger and suite summaries. Every JSON document carries "schema_version"
// and a "kind"; every CSV starts with a header row.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "heisot/approximation.hpp"
#include "heisot/diagnostics.hpp"
#include "heisot/geodesic.hpp"
#include "heisot/measures.hpp"
#include "heisot/transport.hpp"

namespace heisot::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Shortest text that reads back to the same double.
inline std::string num(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const Point& p) { return p.coords(); }

inline Point point_from_json(const Json& j) {
  detail::require(j.is_array(), "point: expected a JSON array of coordinates");
  std::vector<double> c;
  for (const auto& v : j) {
    detail::require(v.is_number(), "point: coordinates must be numbers");
    c.push_back(v.get<double>());
  }
  detail::require(c.size() >= 3 && c.size() % 2 == 1, "point: need 2n+1 coordinates with n >= 1");
  for (double v : c) detail::require(std::isfinite(v), "point: coordinates must be finite");
  return Point::from_coords(c);
}

namespace detail {

using heisot::detail::require;

inline Json document(const char* kind) { return Json{{"schema_version", kSchemaVersion}, {"kind", kind}}; }

inline void expect_kind(const Json& j, const char* kind) {
  detail::require(j.is_object(), std::string(kind) + ": expected a JSON object");
  if (j.contains("schema_version"))
    detail::require(j.at("schema_version") == kSchemaVersion,
                            std::string(kind) + ": unsupported schema_version");
  if (j.contains("kind"))
    detail::require(j.at("kind") == kind, std::string("expected a document of kind ") + kind);
}

template <typename F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

}  // namespace detail

inline Json to_json(const AtomicMeasure& mu) {
  Json j = detail::document("atomic_measure");
  j["n"] = mu.n();
  j["atoms"] = Json::array();
  for (const auto& a : mu.atoms) j["atoms"].push_back(to_json(a));
  j["weights"] = mu.weights;
  return j;
}

inline AtomicMeasure measure_from_json(const Json& j) {
  return detail::guarded("measure", [&] {
    detail::expect_kind(j, "atomic_measure");
    std::vector<Point> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back(point_from_json(a));
    const auto weights = j.at("weights").get<std::vector<double>>();
    return AtomicMeasure(std::move(atoms), weights);
  });
}

inline Json to_json(const Box& box) {
  Json j = detail::document("uniform_box");
  j["lo"] = box.lo;
  j["hi"] = box.hi;
  return j;
}

/// Source measure description; only the normalized uniform law on a box is supported.
inline SampledMeasure sampled_from_json(const Json& j) {
  return detail::guarded("source measure", [&] {
    detail::expect_kind(j, "uniform_box");
    const Box box(j.at("lo").get<std::vector<double>>(), j.at("hi").get<std::vector<double>>());
    detail::require(box.volume() > 0.0, "source measure: the box has zero volume");
    return SampledMeasure::uniform_box(box);
  });
}

inline Json to_json(const TransportPlan& gamma) {
  Json j = detail::document("transport_plan");
  j["source"] = to_json(gamma.source);
  j["target"] = to_json(gamma.target);
  j["entries"] = Json::array();
  for (const auto& e : gamma.entries) j["entries"].push_back(Json::array({e.i, e.j, e.mass}));
  return j;
}

/// Parses and validates marginals and indices at kMarginalTolerance.
inline TransportPlan plan_from_json(const Json& j) {
  return detail::guarded("plan", [&] {
    detail::expect_kind(j, "transport_plan");
    TransportPlan p;
    p.source = measure_from_json(j.at("source"));
    p.target = measure_from_json(j.at("target"));
    for (const auto& e : j.at("entries")) {
      detail::require(e.is_array() && e.size() == 3, "plan: entries must be [i, j, mass]");
      const auto i = e.at(0).get<long long>(), k = e.at(1).get<long long>();
      detail::require(i >= 0 && k >= 0, "plan: negative atom index");
      p.entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(k), e.at(2).get<double>()});
    }
    p.validate(kMarginalTolerance);
    return p;
  });
}

inline Json to_json(const CheckReport& r) {
  Json j{{"name", r.name},           {"trials", r.trials},
         {"violations", r.violations}, {"worst_violation", r.worst_violation},
         {"tolerance", r.tolerance},   {"pass", r.pass},
         {"statistical", r.statistical}, {"informational", r.informational},
         {"note", r.note}};
  Json m = Json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  j["metrics"] = m;
  return j;
}

inline Json to_json(const std::vector<CheckReport>& reports) {
  Json j = detail::document("check_reports");
  j["reports"] = Json::array();
  for (const auto& r : reports) j["reports"].push_back(to_json(r));
  return j;
}

// ---------------------------------------------------------------------------
// Files

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": malformed JSON: " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
  if (!out) throw ValidationError("write failed for " + path);
}

inline void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

// ---------------------------------------------------------------------------
// CSV

/// Header s, xi_1..xi_n, eta_1..eta_n, t.
inline std::string coord_header(std::size_t n) {
  std::string h;
  for (std::size_t k = 1; k <= n; ++k) h += ",xi" + std::to_string(k);
  for (std::size_t k = 1; k <= n; ++k) h += ",eta" + std::to_string(k);
  return h + ",t";
}

/// steps + 1 rows along the selected curve from x to y; the end rows are x and y verbatim.
inline std::string curve_csv(const Point& x, const Point& y, int steps) {
  detail::require(steps >= 2, "curve export: steps must be >= 2");
  const MinimalCurve c = minimal_curve(x, y);
  std::ostringstream out;
  out << "s" << coord_header(x.n()) << "\n";
  for (int k = 0; k <= steps; ++k) {
    const double s = static_cast<double>(k) / steps;
    const Point p = k == 0 ? x : k == steps ? y : c.eval(s);
    out << num(s);
    for (double v : p.coords()) out << "," << num(v);
    out << "\n";
  }
  return out.str();
}

/// One row per cell: cell center, value.
inline std::string histogram_csv(const DensityField& f) {
  std::ostringstream out;
  out << "cell" << coord_header(f.grid.origin.size() / 2) << ",value\n";
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    out << k;
    for (double v : f.grid.cell_center(k)) out << "," << num(v);
    out << "," << num(f.values[k]) << "\n";
  }
  return out.str();
}

/// Epsilon ledger; the last row is the exact W_1(mu_N, nu) reference with epsilon 0.
inline std::string ledger_csv(const SequenceResult& seq) {
  std::ostringstream out;
  out << "epsilon,d_cost,d2_cost,w1_gap,card,dispersion,marginal_w1,objective,m,reweighted\n";
  for (const auto& s : seq.steps)
    out << num(s.epsilon) << "," << num(s.value.d_cost) << "," << num(s.value.d2_cost) << "," << num(s.w1_gap)
        << "," << s.value.card << "," << num(s.dispersion) << "," << num(s.value.w1) << "," << num(s.value.total)
        << "," << s.m << "," << (s.reweighted ? 1 : 0) << "\n";
  out << "0," << num(seq.w1_reference) << ",,0,,,,,,\n";
  return out.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string summary_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "name,pass,trials,violations,worst_violation,tolerance,statistical,informational,note\n";
  for (const auto& r : reports)
    out << csv_field(r.name) << "," << (r.pass ? 1 : 0) << "," << r.trials << "," << r.violations << ","
        << num(r.worst_violation) << "," << num(r.tolerance) << "," << (r.statistical ? 1 : 0) << ","
        << (r.informational ? 1 : 0) << "," << csv_field(r.note) << "\n";
  return out.str();
}

}  // namespace heisot::io

#endif  // HEISOT_IO_HPP
