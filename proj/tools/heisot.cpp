// heisot: distances and minimal curves in H^n, the penalized transport pipeline and the
// diagnostic suites.
//
//   heisot dist  X... -- Y...
//   heisot geod  X... -- Y... [--steps K] [--strict] [--out FILE]
//   heisot pipeline --mu MU.json --nu NU.json --out DIR [--eps 0.5,0.2] [--samples N] [--seed S] [--grid H]
//   heisot verify [SUITE] [--plan PLAN.json] [--seed S] [--out DIR]
//
// Exit codes: 0 success, 1 validation error, 2 solver error, 3 failed check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "heisot/io.hpp"
#include "heisot/suites.hpp"

namespace {

using namespace heisot;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCheck = 3;

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::exception& cause, int code)
      : std::runtime_error("stage '" + stage + "' failed: " + cause.what()), code_(code) {}
  [[nodiscard]] int code() const { return code_; }

 private:
  int code_;
};

template <typename F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw StageError(name, e, kExitValidation);
  } catch (const SolverError& e) {
    throw StageError(name, e, kExitSolver);
  }
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

// Splits "X... -- Y..." out of the arguments of dist/geod, leaving the flags for CLI11.
// Options listed in `valued` consume the next token.
struct PointArgs {
  std::vector<std::vector<double>> points{{}};
  std::vector<std::string> rest;
};

PointArgs split_points(const std::vector<std::string>& args, const std::vector<std::string>& valued) {
  PointArgs out;
  for (std::size_t k = 0; k < args.size(); ++k) {
    const std::string& a = args[k];
    double v = 0.0;
    if (a == "--") {
      out.points.emplace_back();
    } else if (parse_number(a, v)) {
      out.points.back().push_back(v);
    } else if (a.rfind("-", 0) == 0) {
      out.rest.push_back(a);
      const bool takes_value = std::find(valued.begin(), valued.end(), a) != valued.end();
      if (takes_value && k + 1 < args.size()) out.rest.push_back(args[++k]);
    } else {
      throw ValidationError("malformed coordinate '" + a + "'");
    }
  }
  return out;
}

std::pair<Point, Point> two_points(const PointArgs& pa, std::optional<std::size_t> n) {
  detail::require(pa.points.size() == 2, "expected two points separated by '--'");
  const auto& a = pa.points[0];
  const auto& b = pa.points[1];
  detail::require(a.size() == b.size(), "the two points have different lengths");
  detail::require(a.size() >= 3 && a.size() % 2 == 1, "a point needs 2n+1 coordinates (xi..., eta..., t)");
  if (n) detail::require(a.size() == 2 * *n + 1, "coordinate count does not match --n");
  return {Point::from_coords(a), Point::from_coords(b)};
}

int parse_sub(CLI::App& app, const std::vector<std::string>& rest, const std::string& prog) {
  std::vector<std::string> reversed(rest.rbegin(), rest.rend());
  app.name(prog);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? -1 : kExitValidation;
  }
  return kExitOk;
}

int cmd_dist(const std::vector<std::string>& args) {
  CLI::App app{"Carnot-Caratheodory distance between two points"};
  std::optional<std::size_t> n;
  app.add_option("--n", n, "Group index n (inferred from the coordinate count)");
  const PointArgs pa = split_points(args, {"--n"});
  if (const int rc = parse_sub(app, pa.rest, "heisot dist"); rc != kExitOk) return rc < 0 ? kExitOk : rc;
  const auto [x, y] = two_points(pa, n);
  std::cout << io::fixed(cc_distance(x, y), 12) << "\n";
  return kExitOk;
}

int cmd_geod(const std::vector<std::string>& args) {
  CLI::App app{"Points along the selected minimal curve, as CSV"};
  std::optional<std::size_t> n;
  int steps = 16;
  bool strict = false;
  std::string out;
  app.add_option("--n", n, "Group index n (inferred from the coordinate count)");
  app.add_option("--steps", steps, "Number of segments; steps + 1 rows are written");
  app.add_flag("--strict", strict, "Fail when the endpoints differ by a central element");
  app.add_option("--out", out, "Output file (default: stdout)");
  const PointArgs pa = split_points(args, {"--n", "--steps", "--out"});
  if (const int rc = parse_sub(app, pa.rest, "heisot geod"); rc != kExitOk) return rc < 0 ? kExitOk : rc;
  const auto [x, y] = two_points(pa, n);
  detail::require(steps >= 2, "--steps must be >= 2");
  const MinimalCurve c = minimal_curve(x, y);
  std::string text;
  if (c.center_selection) {
    detail::require(!strict, "the endpoints differ by a central element; the minimal curve is not unique");
    text = "# center-selection: endpoints differ by a central element; canonical curve (chi along xi1)\n";
  }
  text += io::curve_csv(x, y, steps);
  if (out.empty())
    std::cout << text;
  else
    io::write_text(out, text);
  return kExitOk;
}

std::vector<double> parse_eps_list(const std::vector<std::string>& raw) {
  std::vector<double> eps;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    for (std::string tok; std::getline(ss, tok, ',');) {
      double v = 0.0;
      detail::require(parse_number(tok, v), "malformed epsilon '" + tok + "'");
      eps.push_back(v);
    }
  }
  return eps;
}

int summarize(const std::vector<CheckReport>& reports, const std::string& out_dir) {
  if (!out_dir.empty()) {
    io::write_json((std::filesystem::path(out_dir) / "reports.json").string(), io::to_json(reports));
    io::write_text((std::filesystem::path(out_dir) / "summary.csv").string(), io::summary_csv(reports));
  }
  std::cout << io::summary_csv(reports);
  std::vector<std::string> failed;
  for (const auto& r : reports)
    if (!r.informational && !r.pass) failed.push_back(r.name);
  if (failed.empty()) return kExitOk;
  std::cerr << "failed checks:";
  for (const auto& f : failed) std::cerr << " " << f;
  std::cerr << "\n";
  return kExitCheck;
}

int cmd_pipeline(const std::vector<std::string>& args) {
  CLI::App app{"Penalized approximation pipeline with diagnostics"};
  std::string mu_file, nu_file, out_dir;
  std::vector<std::string> eps_raw;
  std::size_t samples = 2000, mc_samples = 200000;
  std::uint64_t seed = 1;
  double grid = 0.2;
  std::optional<std::size_t> n;
  app.add_option("--mu", mu_file, "Source measure JSON (uniform_box)")->required();
  app.add_option("--nu", nu_file, "Target measure JSON (atomic_measure)")->required();
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--eps", eps_raw, "Decreasing epsilon schedule, comma separated")->delimiter(',');
  app.add_option("--samples", samples, "Size N of the empirical source");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--grid", grid, "Histogram cell size h");
  app.add_option("--mc-samples", mc_samples, "Monte Carlo samples per delta for the lower density check");
  app.add_option("--n", n, "Group index n (must match the inputs)");
  if (const int rc = parse_sub(app, args, "heisot pipeline"); rc != kExitOk) return rc < 0 ? kExitOk : rc;

  const auto eps = eps_raw.empty() ? default_pipeline().epsilons : parse_eps_list(eps_raw);
  detail::require(samples > 0, "--samples must be positive");
  detail::require(grid > 0.0, "--grid must be positive");
  const SampledMeasure mu = stage("read mu", [&] { return io::sampled_from_json(io::read_json(mu_file)); });
  const AtomicMeasure nu = stage("read nu", [&] { return io::measure_from_json(io::read_json(nu_file)); });
  detail::require(mu.support_box.n() == nu.n(), "mu and nu live in different groups");
  if (n) detail::require(*n == nu.n(), "--n does not match the input files");
  std::filesystem::create_directories(out_dir);
  const auto path = [&](const char* f) { return (std::filesystem::path(out_dir) / f).string(); };

  const SequenceResult seq =
      stage("approximation", [&] { return run_approximation_sequence(mu, nu, eps, samples, seed); });
  io::write_text(path("ledger.csv"), io::ledger_csv(seq));
  io::Json plans = io::detail::document("plan_sequence");
  plans["steps"] = io::Json::array();
  for (const auto& s : seq.steps) plans["steps"].push_back({{"epsilon", s.epsilon}, {"plan", io::to_json(s.plan)}});
  io::write_json(path("plans.json"), plans);
  const TransportPlan& final_plan = seq.steps.back().plan;
  io::write_json(path("plan_final.json"), io::to_json(final_plan));
  io::write_json(path("mu_empirical.json"), io::to_json(seq.mu_emp));

  const double rho_max = 1.0 / mu.support_box.volume();
  std::vector<CheckReport> reports = stage("diagnostics", [&] {
    std::vector<CheckReport> r;
    r.push_back(check_pipeline_convergence(seq));
    r.push_back(check_monotone_rays(final_plan));
    const double e = seq.steps.back().epsilon;
    r.push_back(check_cyclical_monotonicity(
        final_plan, [e](const Point& a, const Point& b) { return c_eps_cost(e, a, b); }, 3, 5000, seed));
    r.push_back(check_interpolant_density(final_plan, 0.5, grid, rho_max));
    CheckReport shuffled = check_interpolant_density(shuffle_targets(final_plan, seed), 0.5, grid, rho_max);
    shuffled.name += "_shuffled";
    shuffled.informational = true;
    r.push_back(shuffled);
    const PlanEntry c = central_entry(final_plan, mu.support_box);
    LowerDensityOptions lower;
    lower.samples = mc_samples;
    lower.seed = seed;
    r.push_back(check_transport_lower_density(final_plan, final_plan.source.atoms[c.i], final_plan.target.atoms[c.j],
                                              0.05, {0.4, 0.2, 0.1}, lower));
    return r;
  });
  const AtomicMeasure half = interpolate(final_plan, 0.5);
  const auto hist = histogram_density(half, HistogramGrid::covering(Box::bounding(half.atoms).inflated(0.0, 1e-9), grid));
  io::write_text(path("interpolant_density.csv"), io::histogram_csv(hist));
  return summarize(reports, out_dir);
}

int cmd_verify(const std::vector<std::string>& args) {
  CLI::App app{"Run a diagnostic suite or check a plan file"};
  std::string suite, plan_file, out_dir, cost = "d";
  std::uint64_t seed = 1;
  double eps = 0.1;
  app.add_option("suite", suite, "geometry, transport, density or all");
  app.add_option("--plan", plan_file, "Transport plan JSON to check");
  app.add_option("--cost", cost, "Cost the plan is optimal for: d, d2 or ceps")->check(CLI::IsMember({"d", "d2", "ceps"}));
  app.add_option("--eps", eps, "Epsilon of the ceps cost");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", out_dir, "Directory for reports.json and summary.csv");
  if (const int rc = parse_sub(app, args, "heisot verify"); rc != kExitOk) return rc < 0 ? kExitOk : rc;
  detail::require(!suite.empty() || !plan_file.empty(), "give a suite name or --plan");
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

  std::vector<CheckReport> reports;
  if (!plan_file.empty()) {
    const TransportPlan plan = stage("read plan " + plan_file, [&] { return io::plan_from_json(io::read_json(plan_file)); });
    CostFunction c = distance_cost;
    if (cost == "d2") c = squared_distance_cost;
    if (cost == "ceps") c = [eps](const Point& a, const Point& b) { return c_eps_cost(eps, a, b); };
    CheckReport cyc = check_cyclical_monotonicity(plan, c, 4, 20000, seed);
    cyc.metric("graph_dispersion", graph_dispersion(plan));
    reports.push_back(cyc);
  }
  if (!suite.empty()) {
    const SuiteResult res = stage("suite " + suite, [&] { return run_suite(suite, seed); });
    reports.insert(reports.end(), res.reports.begin(), res.reports.end());
  }
  return summarize(reports, out_dir);
}

void usage() {
  std::cerr << "usage: heisot <dist|geod|pipeline|verify> [args]\n"
               "  dist X... -- Y...                   distance, 12 decimals\n"
               "  geod X... -- Y... [--steps K]       curve CSV (s, xi..., eta..., t)\n"
               "  pipeline --mu F --nu F --out DIR    epsilon ledger, plans and reports\n"
               "  verify SUITE | --plan F             geometry, transport, density or all\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage();
    return kExitValidation;
  }
  const std::string cmd = argv[1];
  const std::vector<std::string> args(argv + 2, argv + argc);
  try {
    if (cmd == "dist") return cmd_dist(args);
    if (cmd == "geod") return cmd_geod(args);
    if (cmd == "pipeline") return cmd_pipeline(args);
    if (cmd == "verify") return cmd_verify(args);
    if (cmd == "-h" || cmd == "--help") {
      usage();
      return kExitOk;
    }
    std::cerr << "unknown command '" << cmd << "'\n";
    usage();
    return kExitValidation;
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
