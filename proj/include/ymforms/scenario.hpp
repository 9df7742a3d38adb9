#pragma once

#include <optional>
#include <string>

#include "ymforms/variational.hpp"

namespace ymforms {

// Declarative description of a connection family plus the checks to run.
struct Scenario {
  std::string name;
  int algebra_dim = 2;
  Metric metric = Metric::euclidean();
  TraceKind trace = TraceKind::Matrix;
  QuadratureSpec quadrature;
  std::uint64_t seed = 20240901;
  int points = 100;
  double tolerance = 1e-8;

  std::string builtin;  // bpst | dirac-monopole | example-6-3 | constant | custom-eta | custom
  Connection connection;
  std::optional<EtaForm> eta;
  std::optional<BPSTBundle> bpst;
  std::optional<DiracReport> dirac;
  std::optional<ConstantReport> constant;

  std::vector<std::string> checks;
};

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | info
  double worst = 0;
  double tolerance = 0;
  int points = 0;
  std::string note;
};

struct Report {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool failed() const {
    for (const auto& c : checks)
      if (c.status == "fail") return true;
    return false;
  }
};

// Exit codes: 0 all pass, 1 check failure, 2 input error.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& known_builtins();
const std::vector<std::string>& known_checks();

Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_json(const std::string& text, const std::string& origin);

Report run_checks(const Scenario& s);
Report run_checks(const Scenario& s, const std::vector<std::string>& subset);

std::string report_human(const Report& r);
std::string report_json(const Report& r);

// CSV emitters for the tabular commands.
std::string star_table_csv(const Metric& m);
std::string current_csv(const Scenario& s);
std::string fields_csv(const Scenario& s);
std::string optimize_history_csv(const std::vector<OptimizeHistoryRow>& rows);

}  // namespace ymforms
