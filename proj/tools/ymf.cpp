#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ymforms/acceptance.hpp"
#include "ymforms/scenario.hpp"

using namespace ymforms;

namespace {

struct CommonOpts {
  std::string metric;
  std::string trace;
  double tolerance = -1;
  int points = -1;
  double radius = -1;
  int nodes = -1;
  std::uint64_t seed = 0;
  bool have_seed = false;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--metric", o.metric, "euclidean | minkowski");
  cmd->add_option("--trace", o.trace, "matrix | state");
  cmd->add_option("--tolerance", o.tolerance, "check tolerance override");
  cmd->add_option("--points", o.points, "sample point count override");
  cmd->add_option("--radius", o.radius, "quadrature radius override");
  cmd->add_option("--nodes", o.nodes, "quadrature nodes per axis override");
  cmd->add_option("--seed", o.seed, "RNG seed override")
      ->each([&o](const std::string&) { o.have_seed = true; });
  cmd->add_flag("--json", o.json, "structured JSON output");
}

void apply_common(Scenario& s, const CommonOpts& o) {
  if (o.metric == "euclidean")
    s.metric = Metric::euclidean();
  else if (o.metric == "minkowski")
    s.metric = Metric::minkowski();
  else if (!o.metric.empty())
    throw ScenarioError("metric must be euclidean or minkowski");
  if (o.trace == "matrix")
    s.trace = TraceKind::Matrix;
  else if (o.trace == "state")
    s.trace = TraceKind::State;
  else if (!o.trace.empty())
    throw ScenarioError("trace must be matrix or state");
  if (o.tolerance > 0) s.tolerance = o.tolerance;
  if (o.points > 0) s.points = o.points;
  if (o.radius > 0) s.quadrature.radius = o.radius;
  if (o.nodes > 0) s.quadrature.nodes_per_axis = o.nodes;
  if (o.have_seed) s.seed = o.seed;
}

int emit_report(const Report& r, bool json) {
  std::cout << (json ? report_json(r) : report_human(r));
  return r.failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C*-algebra-valued complex form calculus and Yang-Mills verification"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, metric_name = "euclidean";
  std::vector<std::string> only_checks;
  CommonOpts opts;
  int criterion = 0;

  auto* verify = app.add_subcommand("verify", "run a scenario's check list");
  verify->add_option("scenario", scenario_path, "scenario JSON file")->required();
  verify->add_option("--check", only_checks, "run only the named checks");
  add_common(verify, opts);

  auto* startab = app.add_subcommand("star-table", "print the Hodge star of all basis forms");
  startab->add_option("--metric", metric_name, "euclidean | minkowski");
  startab->add_option("--output", out_path, "write CSV here instead of stdout");

  auto* cur = app.add_subcommand("current", "J components at sample points (CSV)");
  cur->add_option("scenario", scenario_path)->required();
  cur->add_option("--output", out_path);
  add_common(cur, opts);

  auto* fld = app.add_subcommand("fields", "E/B components and <E,B> at sample points (CSV)");
  fld->add_option("scenario", scenario_path)->required();
  fld->add_option("--output", out_path);
  add_common(fld, opts);

  auto* fun = app.add_subcommand("functional", "Yang-Mills functional H(A) by quadrature");
  fun->add_option("scenario", scenario_path)->required();
  add_common(fun, opts);

  auto* crit = app.add_subcommand("critical-check", "directional-derivative criticality check");
  crit->add_option("scenario", scenario_path)->required();
  add_common(crit, opts);

  auto* opt = app.add_subcommand("optimize-profile", "radial-profile coordinate descent");
  double mu = 1.0;
  int knots = 7;
  opt->add_option("--mu-hint", mu, "scale hint (exact profile is r/(r+mu))");
  opt->add_option("--knots", knots, "interior knot count");
  double perturb = 0.1;
  opt->add_option("--perturb", perturb, "relative perturbation of the initial knots");
  opt->add_option("--output", out_path, "write the history CSV here");
  add_common(opt, opts);

  auto* acc = app.add_subcommand("acceptance", "run acceptance criteria (1..12, default all)");
  acc->add_option("criterion", criterion, "criterion id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      Scenario s = parse_scenario(scenario_path);
      apply_common(s, opts);
      Report r = only_checks.empty() ? run_checks(s) : run_checks(s, only_checks);
      return emit_report(r, opts.json);
    }
    if (startab->parsed()) {
      Metric m = metric_name == "minkowski" ? Metric::minkowski()
                                            : Metric::euclidean();
      std::string csv = star_table_csv(m);
      if (out_path.empty())
        std::cout << csv;
      else
        std::ofstream(out_path) << csv;
      return 0;
    }
    if (cur->parsed() || fld->parsed()) {
      Scenario s = parse_scenario(scenario_path);
      apply_common(s, opts);
      std::string csv = cur->parsed() ? current_csv(s) : fields_csv(s);
      if (out_path.empty())
        std::cout << csv;
      else
        std::ofstream(out_path) << csv;
      return 0;
    }
    if (fun->parsed()) {
      Scenario s = parse_scenario(scenario_path);
      apply_common(s, opts);
      FunctionalResult H = functional(s.connection, nullptr, s.metric,
                                      s.quadrature, s.trace);
      std::cout << "H = " << H.total.real() << " + " << H.total.imag()
                << "i  (curvature part " << H.curvature_part.real() << ")\n";
      return 0;
    }
    if (crit->parsed()) {
      Scenario s = parse_scenario(scenario_path);
      apply_common(s, opts);
      if (s.checks.empty()) s.checks = {"criticality"};
      Report r = run_checks(s, {"criticality"});
      return emit_report(r, opts.json);
    }
    if (opt->parsed()) {
      ProfileParam init = ProfileParam::bpst_knots(mu, knots);
      Sampler s(opts.have_seed ? opts.seed : 20240901);
      for (size_t k = 1; k + 1 < init.values.size(); ++k)
        init.values[k] *= 1.0 + s.uniform(-perturb, perturb);
      QuadratureSpec quad;
      quad.nodes_per_axis = opts.nodes > 0 ? opts.nodes : 8;
      if (opts.radius > 0) quad.radius = opts.radius;
      OptimizeResult r = optimize_profile(init, mu, quad);
      std::string csv = optimize_history_csv(r.history);
      if (out_path.empty())
        std::cout << csv;
      else
        std::ofstream(out_path) << csv;
      std::cerr << "residual " << r.initial_residual << " -> "
                << r.final_residual << (r.stalled ? " (stalled)" : "") << "\n";
      return 0;
    }
    if (acc->parsed()) {
      bool all_pass = true;
      if (criterion >= 1) {
        CriterionOutcome o = run_criterion(criterion);
        print_outcome(std::cout, o);
        all_pass = o.pass;
      } else {
        for (int id = 1; id <= kCriteriaCount; ++id) {
          CriterionOutcome o = run_criterion(id);
          print_outcome(std::cout, o);
          all_pass = all_pass && o.pass;
        }
      }
      return all_pass ? 0 : 1;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
