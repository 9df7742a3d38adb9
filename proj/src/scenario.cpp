#include "ymforms/scenario.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ymforms {

using nlohmann::json;

namespace {

CMatrix parse_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw ScenarioError(what + ": expected a nested array of [re, im] pairs");
  const int n = int(j.size());
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || int(j[r].size()) != n)
      throw ScenarioError(what + ": matrix must be square");
    for (int c = 0; c < n; ++c) {
      const json& e = j[r][c];
      if (!e.is_array() || e.size() != 2)
        throw ScenarioError(what + ": entries are [re, im] pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Poly parse_poly(const json& j, int n, const std::string& what) {
  if (!j.is_array()) throw ScenarioError(what + ": expected a list of terms");
  Poly p(n);
  for (const auto& t : j) {
    if (!t.contains("powers") || !t.contains("matrix"))
      throw ScenarioError(what + ": each term has \"powers\" and \"matrix\"");
    auto pw = t["powers"];
    if (!pw.is_array() || pw.size() != 4)
      throw ScenarioError(what + ": powers are 4 nonnegative integers");
    std::array<int, 4> powers{};
    for (int k = 0; k < 4; ++k) {
      powers[k] = pw[k].get<int>();
      if (powers[k] < 0) throw ScenarioError(what + ": powers must be >= 0");
    }
    CMatrix m = parse_matrix(t["matrix"], what);
    if (int(m.rows()) != n)
      throw ScenarioError(what + ": matrix dimension != algebra_dim");
    p = p + Poly::monomial(powers, m);
  }
  return p;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& e : v) s += (s.empty() ? "" : ", ") + e;
  return s;
}

}  // namespace

const std::vector<std::string>& known_builtins() {
  static const std::vector<std::string> names = {
      "bpst", "dirac-monopole", "example-6-3", "constant", "custom-eta", "custom"};
  return names;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "skew",           "bianchi",        "vacuum-current",
      "self-current",   "curvature-cross", "current-cross",
      "sd",             "asd",            "nonzero-curvature",
      "maurer-cartan",  "lorenz",         "sde-residual",
      "asde-residual",  "sdm-residual",   "asdm-residual",
      "normal-flags",   "gamma-unitary",  "eq-5-4",
      "bpst-sign",      "eb-inner-bpst",  "profile-ode",
      "eb-sign-sd",     "eb-sign-asd",    "example-6-3-bracket",
      "gauge-normalize","dirac-conditions","constant-conditions",
      "criticality",    "functional-positive"};
  return names;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_json(ss.str(), path);
}

Scenario parse_scenario_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ScenarioError(origin + ": invalid JSON: " + e.what());
  }

  Scenario s;
  s.name = j.value("name", origin);
  s.algebra_dim = j.value("algebra_dim", 2);
  s.seed = j.value("seed", std::uint64_t(20240901));
  s.points = j.value("points", 100);
  s.tolerance = j.value("tolerance", 1e-8);

  std::string metric = j.value("metric", "euclidean");
  if (metric == "euclidean")
    s.metric = Metric::euclidean();
  else if (metric == "minkowski")
    s.metric = Metric::minkowski();
  else
    throw ScenarioError("metric must be \"euclidean\" or \"minkowski\"");

  std::string tr = j.value("trace", "matrix");
  if (tr == "matrix")
    s.trace = TraceKind::Matrix;
  else if (tr == "state")
    s.trace = TraceKind::State;
  else
    throw ScenarioError("trace must be \"matrix\" or \"state\"");

  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    s.quadrature.radius = q.value("radius", 6.0);
    s.quadrature.nodes_per_axis = q.value("nodes_per_axis", 16);
    std::string rule = q.value("rule", "gauss");
    if (rule == "gauss")
      s.quadrature.rule = QuadratureSpec::Rule::Gauss;
    else if (rule == "midpoint")
      s.quadrature.rule = QuadratureSpec::Rule::Midpoint;
    else
      throw ScenarioError("quadrature rule must be \"gauss\" or \"midpoint\"");
  }

  if (!j.contains("connection"))
    throw ScenarioError("scenario needs a \"connection\" object");
  const auto& c = j["connection"];
  s.builtin = c.value("builtin", "");
  const auto& names = known_builtins();
  if (std::find(names.begin(), names.end(), s.builtin) == names.end())
    throw ScenarioError("unknown builtin \"" + s.builtin +
                        "\"; known: " + join(names));

  try {
    if (s.builtin == "bpst") {
      BPSTParams params;
      params.mu = c.value("mu", 1.0);
      s.bpst = build_bpst(params);
      s.connection = s.bpst->A;
      s.eta = s.bpst->eta;
      s.algebra_dim = 2;
    } else if (s.builtin == "dirac-monopole") {
      CMatrix B1 = parse_matrix(c.at("B1"), "B1");
      CMatrix B2 = parse_matrix(c.at("B2"), "B2");
      if (B1.rows() != s.algebra_dim || B2.rows() != s.algebra_dim)
        throw ScenarioError("B1/B2 dimension != algebra_dim");
      auto [A, rep] = build_dirac_monopole(B1, B2);
      s.connection = std::move(A);
      s.dirac = rep;
      EtaForm eta;
      eta.n = s.algebra_dim;
      eta.a1 = Coefficient::from_poly(Poly::monomial({0, 0, 1, 0}, B1));
      eta.a2 = Coefficient::from_poly(Poly::monomial({0, 0, 0, 1}, B2));
      eta.normal = rep.normal1 && rep.normal2;
      s.eta = eta;
    } else if (s.builtin == "example-6-3") {
      Poly h(1);
      if (c.contains("h")) h = parse_poly(c["h"], 1, "h");
      Example63 ex = build_example_6_3(h);
      s.connection = ex.A;
      s.eta = ex.eta;
      s.algebra_dim = 2;
    } else if (s.builtin == "constant") {
      CMatrix A1 = parse_matrix(c.at("A1"), "A1");
      CMatrix A2 = parse_matrix(c.at("A2"), "A2");
      if (A1.rows() != A2.rows())
        throw ScenarioError("A1/A2 dimension mismatch");
      if (int(A1.rows()) != s.algebra_dim)
        throw ScenarioError("A1 dimension != algebra_dim");
      auto [A, rep] = build_constant(A1, A2, s.metric);
      s.connection = std::move(A);
      s.constant = rep;
      EtaForm eta;
      eta.n = s.algebra_dim;
      eta.a1 = Coefficient::constant(A1);
      eta.a2 = Coefficient::constant(A2);
      eta.holomorphic = true;
      eta.normal = rep.normal1 && rep.normal2;
      s.eta = eta;
    } else if (s.builtin == "custom-eta") {
      EtaForm eta;
      eta.n = s.algebra_dim;
      eta.a1 = Coefficient::from_poly(parse_poly(c.at("A1"), s.algebra_dim, "A1"));
      eta.a2 = Coefficient::from_poly(parse_poly(c.at("A2"), s.algebra_dim, "A2"));
      eta.holomorphic = c.value("holomorphic", false);
      eta.normal = c.value("normal", false);
      s.eta = eta;
      s.connection = from_eta(eta, EtaKind::Skew);
    } else {  // custom: four explicit components
      Connection A;
      A.n = s.algebra_dim;
      const char* keys[4] = {"A1", "A2", "A1bar", "A2bar"};
      for (int g = 0; g < 4; ++g)
        if (c.contains(keys[g]))
          A.comp[g] =
              Coefficient::from_poly(parse_poly(c[keys[g]], s.algebra_dim, keys[g]));
      s.connection = std::move(A);
    }
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("connection: ") + e.what());
  }

  if (j.contains("checks")) {
    for (const auto& ch : j["checks"]) {
      std::string name = ch.get<std::string>();
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ScenarioError("unknown check \"" + name +
                            "\"; known: " + join(known));
      s.checks.push_back(name);
    }
  }
  return s;
}

namespace {

using CheckFn = std::function<CheckResult(const Scenario&)>;

CheckResult max_over_points(const Scenario& s, const std::string& name,
                            double tol,
                            const std::function<double(const Point&)>& f) {
  Sampler sampler(s.seed);
  double min_abs = s.builtin == "bpst" ? 0.1 : 0.0;
  auto pts = sampler.points(s.points, 2.0, min_abs);
  double worst = 0;
  for (const auto& z : pts) worst = std::max(worst, f(z));
  CheckResult r{name, worst <= tol ? "pass" : "fail", worst, tol,
                int(pts.size()), ""};
  return r;
}

const EtaForm& require_eta(const Scenario& s, const std::string& check) {
  if (!s.eta) throw ScenarioError(check + ": scenario has no eta data");
  return *s.eta;
}

CheckResult check_duality_class(const Scenario& s, DualityClass want,
                                const std::string& name) {
  Curvature F = curvature(s.connection, CurvatureMethod::Components);
  Sampler sampler(s.seed);
  double min_abs = s.builtin == "bpst" ? 0.1 : 0.0;
  auto pts = sampler.points(s.points, 2.0, min_abs);
  int bad = 0;
  for (const auto& z : pts) {
    DualityClass c = classify_duality(F.form.eval(z), s.metric,
                                      std::max(s.tolerance, 1e-12));
    if (c != want && c != DualityClass::Zero) ++bad;
  }
  return CheckResult{name, bad == 0 ? "pass" : "fail", double(bad), 0,
                     int(pts.size()),
                     std::string("class ") + to_string(want)};
}

std::map<std::string, CheckFn> make_registry() {
  std::map<std::string, CheckFn> reg;

  reg["skew"] = [](const Scenario& s) {
    FormField a = s.connection.form();
    FormField gap = adjoint_form(a) + a;
    return max_over_points(s, "skew", s.tolerance, [&](const Point& z) {
      return norm_sum(gap.eval(z));
    });
  };
  reg["bianchi"] = [](const Scenario& s) {
    YmResiduals r = ym_residuals(s.connection, nullptr, s.metric);
    return max_over_points(s, "bianchi", s.tolerance, [&](const Point& z) {
      return r.at(z).first;
    });
  };
  reg["vacuum-current"] = [](const Scenario& s) {
    YmResiduals r = ym_residuals(s.connection, nullptr, s.metric);
    return max_over_points(s, "vacuum-current", s.tolerance,
                           [&](const Point& z) { return r.at(z).second; });
  };
  reg["self-current"] = [](const Scenario& s) {
    CurrentForm J = current(s.connection, s.metric, CurrentMethod::ClosedForm);
    YmResiduals r = ym_residuals(s.connection, &J, s.metric);
    return max_over_points(s, "self-current", s.tolerance,
                           [&](const Point& z) { return r.at(z).second; });
  };
  reg["curvature-cross"] = [](const Scenario& s) {
    Curvature a = curvature(s.connection, CurvatureMethod::Components);
    Curvature b = curvature(s.connection, CurvatureMethod::Generic);
    return max_over_points(s, "curvature-cross", s.tolerance,
                           [&](const Point& z) {
                             return norm_sum(a.form.eval(z) - b.form.eval(z));
                           });
  };
  reg["current-cross"] = [](const Scenario& s) {
    CurrentForm a = current(s.connection, s.metric, CurrentMethod::ClosedForm);
    CurrentForm b = current(s.connection, s.metric, CurrentMethod::Generic);
    return max_over_points(s, "current-cross", s.tolerance,
                           [&](const Point& z) {
                             return norm_sum(a.form.eval(z) - b.form.eval(z));
                           });
  };
  reg["sd"] = [](const Scenario& s) {
    return check_duality_class(s, DualityClass::SD, "sd");
  };
  reg["asd"] = [](const Scenario& s) {
    return check_duality_class(s, DualityClass::ASD, "asd");
  };
  reg["nonzero-curvature"] = [](const Scenario& s) {
    Curvature F = curvature(s.connection, CurvatureMethod::Components);
    CheckResult r = max_over_points(s, "nonzero-curvature", 0,
                                    [&](const Point& z) {
                                      return F.form.eval(z).norm();
                                    });
    r.status = r.worst > std::max(s.tolerance, 1e-12) ? "pass" : "fail";
    r.tolerance = std::max(s.tolerance, 1e-12);
    return r;
  };
  reg["maurer-cartan"] = [](const Scenario& s) {
    MaurerCartanResidual r = maurer_cartan_residual(s.connection.form());
    return max_over_points(s, "maurer-cartan", s.tolerance,
                           [&](const Point& z) { return r.total_at(z); });
  };
  reg["lorenz"] = [](const Scenario& s) {
    Coefficient closed = lorenz_residual(s.connection, s.metric);
    FormField generic = covariant_costar(s.connection, s.connection.form(), s.metric);
    return max_over_points(s, "lorenz", s.tolerance, [&](const Point& z) {
      return std::max(closed.eval(z, s.algebra_dim).norm(),
                      norm_sum(generic.eval(z)));
    });
  };

  auto thm511 = [](const Scenario& s, const Metric& m, DualityTarget t,
                   const std::string& name) {
    DualityConditionResult r =
        duality_residual_thm511(require_eta(s, name), m, t);
    return max_over_points(s, name, s.tolerance, [&](const Point& z) {
      return std::max(r.residual_at(z), r.crosscheck_at(z));
    });
  };
  reg["sde-residual"] = [thm511](const Scenario& s) {
    return thm511(s, Metric::euclidean(), DualityTarget::SD, "sde-residual");
  };
  reg["asde-residual"] = [thm511](const Scenario& s) {
    return thm511(s, Metric::euclidean(), DualityTarget::ASD, "asde-residual");
  };
  reg["sdm-residual"] = [thm511](const Scenario& s) {
    return thm511(s, Metric::minkowski(), DualityTarget::SD, "sdm-residual");
  };
  reg["asdm-residual"] = [thm511](const Scenario& s) {
    return thm511(s, Metric::minkowski(), DualityTarget::ASD, "asdm-residual");
  };

  reg["normal-flags"] = [](const Scenario& s) {
    const EtaForm& eta = require_eta(s, "normal-flags");
    Sampler sampler(s.seed);
    auto pts = sampler.points(std::min(s.points, 25), 2.0,
                              s.builtin == "bpst" ? 0.1 : 0.0);
    EtaFlagDefects d = verify_eta_flags(eta, pts);
    double worst = std::max(eta.holomorphic ? d.holomorphic : 0.0,
                            eta.normal ? d.normal : 0.0);
    return CheckResult{"normal-flags", worst <= s.tolerance ? "pass" : "fail",
                       worst, s.tolerance, int(pts.size()), ""};
  };

  reg["gamma-unitary"] = [](const Scenario& s) {
    if (!s.bpst) throw ScenarioError("gamma-unitary: needs the bpst builtin");
    const Coefficient& g = s.bpst->gamma;
    return max_over_points(s, "gamma-unitary", s.tolerance, [&](const Point& z) {
      CMatrix v = g.eval(z, 2);
      double unit = (v.adjoint() * v - identity(2)).norm();
      double det = std::abs(v.determinant() - Complex(1, 0));
      return std::max(unit, det);
    });
  };

  reg["eq-5-4"] = [](const Scenario& s) {
    if (!s.bpst) throw ScenarioError("eq-5-4: needs the bpst builtin");
    // numeric d of gamma as the oracle
    const Coefficient gamma = s.bpst->gamma;
    Coefficient gamma_fd =
        Coefficient::fn(2, [gamma](const Point& z) { return gamma.eval(z); });
    std::array<Coefficient, 4> dg;
    for (int w = 0; w < 4; ++w) dg[w] = gamma_fd.derivative(Wirtinger(w));
    FormField eta_part = s.bpst->eta.form();
    FormField eta_star = adjoint_form(eta_part);
    return max_over_points(s, "eq-5-4", s.tolerance, [&, dg](const Point& z) {
      CMatrix ginv = gamma.eval(z, 2).inverse();
      double r = z.r2();
      FormValue skew = eta_part.eval(z) - eta_star.eval(z);
      double worst = 0;
      for (int w = 0; w < 4; ++w) {
        CMatrix lhs = ginv * dg[w].eval(z, 2);
        CMatrix rhs = (-1.0 / (2 * r)) * skew.coef(Mask(1 << w));
        worst = std::max(worst, (lhs - rhs).norm());
      }
      return worst;
    });
  };

  reg["bpst-sign"] = [](const Scenario& s) {
    if (!s.bpst) throw ScenarioError("bpst-sign: needs the bpst builtin");
    Curvature F = curvature(s.connection, CurvatureMethod::Generic);
    FormField deta = exterior_d(s.bpst->eta.form());
    Sampler sampler(s.seed);
    auto pts = sampler.points(s.points, 2.0, 0.1);
    double worst = 1e300;
    int sign = 0;
    for (int cand : {+1, -1}) {
      double w = 0;
      for (const auto& z : pts) {
        FormValue gap =
            F.form.eval(z) - Complex(cand * s.bpst->p(z.r2()), 0) * deta.eval(z);
        w = std::max(w, norm_sum(gap));
      }
      if (w < worst) {
        worst = w;
        sign = cand;
      }
    }
    CheckResult r{"bpst-sign", worst <= s.tolerance ? "pass" : "fail", worst,
                  s.tolerance, int(pts.size()),
                  "F_A = s*p*d(eta) with s = " + std::to_string(sign)};
    return r;
  };

  reg["eb-inner-bpst"] = [](const Scenario& s) {
    if (!s.bpst) throw ScenarioError("eb-inner-bpst: needs the bpst builtin");
    Curvature F = curvature(s.connection, CurvatureMethod::Components);
    auto p = s.bpst->p;
    return max_over_points(s, "eb-inner-bpst", s.tolerance, [&](const Point& z) {
      Complex v = eb_inner(extract_eb(F, z), s.trace);
      double expect = -24.0 * p(z.r2()) * p(z.r2());
      return std::abs(v - Complex(expect, 0)) / std::abs(expect);
    });
  };

  reg["profile-ode"] = [](const Scenario& s) {
    if (!s.bpst) throw ScenarioError("profile-ode: needs the bpst builtin");
    double mu = s.bpst->mu;
    RadialProfile f{[mu](double r) { return r / (r + mu); },
                    [mu](double r) { return mu / ((r + mu) * (r + mu)); }};
    double worst = 0;
    for (double lg = -2; lg <= 2; lg += 0.1)
      worst = std::max(worst, profile_ode_residual(f, std::pow(10.0, lg)));
    return CheckResult{"profile-ode", worst <= s.tolerance ? "pass" : "fail",
                       worst, s.tolerance, 41, ""};
  };

  auto eb_sign = [](const Scenario& s, bool sd, const std::string& name) {
    Curvature F = curvature(s.connection, CurvatureMethod::Components);
    return max_over_points(s, name, s.tolerance, [&](const Point& z) {
      Complex v = eb_inner(extract_eb(F, z), s.trace);
      double scale = std::max(1.0, std::abs(v));
      double off_axis, wrong_side;
      if (s.metric.kind == MetricKind::Euclidean) {
        off_axis = std::abs(v.imag());
        wrong_side = std::max(0.0, sd ? -v.real() : v.real());
      } else {
        off_axis = std::abs(v.real());
        wrong_side = std::max(0.0, sd ? -v.imag() : v.imag());
      }
      return std::max(off_axis, wrong_side) / scale;
    });
  };
  reg["eb-sign-sd"] = [eb_sign](const Scenario& s) {
    return eb_sign(s, true, "eb-sign-sd");
  };
  reg["eb-sign-asd"] = [eb_sign](const Scenario& s) {
    return eb_sign(s, false, "eb-sign-asd");
  };

  reg["example-6-3-bracket"] = [](const Scenario& s) {
    const EtaForm& eta = require_eta(s, "example-6-3-bracket");
    const Complex i(0, 1);
    CMatrix J(2, 2);
    J << 0, 1, -1, 0;
    Coefficient bracket = comm(eta.a2, adjointed(eta.a1));
    return max_over_points(s, "example-6-3-bracket", s.tolerance,
                           [&](const Point& z) {
                             Complex c = std::exp(-i * (z.z2 - M_PI / 4)) /
                                         std::sqrt(2.0);
                             return (bracket.eval(z, 2) - c * J).norm();
                           });
  };

  reg["gauge-normalize"] = [](const Scenario& s) {
    const EtaForm& eta = require_eta(s, "gauge-normalize");
    GaugeNormalizeResult g = gauge_normalize(eta);
    Curvature Fn = curvature(g.normalized, CurvatureMethod::Generic);
    Curvature Fref =
        s.builtin == "example-6-3"
            ? curvature(build_example_6_3(Poly(1)).A, CurvatureMethod::Components)
            : Curvature{FormField(s.algebra_dim)};
    CheckResult r = max_over_points(s, "gauge-normalize", s.tolerance,
                                    [&](const Point& z) {
                                      return norm_sum(Fn.form.eval(z) -
                                                      Fref.form.eval(z));
                                    });
    r.worst = std::max(r.worst, g.unitarity_defect);
    if (r.worst > r.tolerance) r.status = "fail";
    r.note = g.full_subtraction ? "flat commuting case: A_g = 0"
                                : "normal form with constant A'_1";
    return r;
  };

  reg["dirac-conditions"] = [](const Scenario& s) {
    if (!s.dirac) throw ScenarioError("dirac-conditions: needs dirac-monopole");
    const DiracReport& d = *s.dirac;
    double worst = std::min(d.cond_a, d.cond_b);
    bool ok = d.normal1 && d.normal2 && worst <= s.tolerance;
    std::string which = d.cond_a <= d.cond_b ? "(a) SD" : "(b) ASD";
    return CheckResult{"dirac-conditions", ok ? "pass" : "fail", worst,
                       s.tolerance, 1,
                       "condition " + which + ", strict class " +
                           to_string(d.strict_class)};
  };

  reg["constant-conditions"] = [](const Scenario& s) {
    if (!s.constant) throw ScenarioError("constant-conditions: needs constant");
    const ConstantReport& c = *s.constant;
    double cond = s.metric.kind == MetricKind::Euclidean
                      ? std::min(c.euclid_sd, c.euclid_asd)
                      : std::min(c.mink_sd, c.mink_asd);
    double worst = std::max(cond, c.component_identity_defect);
    std::string which =
        s.metric.kind == MetricKind::Euclidean
            ? (c.euclid_sd <= c.euclid_asd ? "euclidean SD" : "euclidean ASD")
            : (c.mink_sd <= c.mink_asd ? "minkowski SD" : "minkowski ASD");
    return CheckResult{"constant-conditions",
                       worst <= s.tolerance ? "pass" : "fail", worst,
                       s.tolerance, 1,
                       which + ", strict class " + to_string(c.strict_class)};
  };

  reg["criticality"] = [](const Scenario& s) {
    Sampler sampler(s.seed);
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
      Connection B = random_bump_connection(sampler, s.algebra_dim, 4.5);
      DirectionalDerivative d = directional_derivative(
          s.connection, B, nullptr, s.metric, s.quadrature, s.trace);
      double scale =
          std::sqrt(std::abs(global_inner(B.form(), B.form(), s.metric,
                                          s.quadrature, s.trace))) +
          1;
      worst = std::max(worst, std::abs(d.finite_difference) / scale);
      worst = std::max(worst, d.gap / scale);
    }
    return CheckResult{"criticality", worst <= s.tolerance ? "pass" : "fail",
                       worst, s.tolerance, 3, "3 seeded bump directions"};
  };

  reg["functional-positive"] = [](const Scenario& s) {
    FunctionalResult H = functional(s.connection, nullptr, s.metric,
                                    s.quadrature, s.trace);
    double scale = std::max(1.0, std::abs(H.total));
    double worst = std::max(std::abs(H.total.imag()),
                            std::max(0.0, -H.total.real())) /
                   scale;
    return CheckResult{"functional-positive",
                       worst <= s.tolerance ? "pass" : "fail", worst,
                       s.tolerance, 1,
                       "H = " + std::to_string(H.total.real())};
  };

  return reg;
}

}  // namespace

Report run_checks(const Scenario& s, const std::vector<std::string>& subset) {
  static const std::map<std::string, CheckFn> registry = make_registry();
  Report r;
  r.scenario = s.name;
  r.seed = s.seed;
  for (const auto& name : subset) {
    auto it = registry.find(name);
    if (it == registry.end())
      throw ScenarioError("unknown check \"" + name +
                          "\"; known: " + join(known_checks()));
    r.checks.push_back(it->second(s));
  }
  return r;
}

Report run_checks(const Scenario& s) { return run_checks(s, s.checks); }

std::string report_human(const Report& r) {
  std::ostringstream os;
  os << "scenario " << r.scenario << " (seed " << r.seed << ")\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.status == "pass" ? "PASS" : c.status == "fail" ? "FAIL" : "INFO")
       << "] " << c.name << "  worst=" << c.worst << " tol=" << c.tolerance
       << " points=" << c.points;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  }
  os << (r.failed() ? "FAILED" : "OK") << "\n";
  return os.str();
}

std::string report_json(const Report& r) {
  json j;
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  j["status"] = r.failed() ? "fail" : "pass";
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"status", c.status},
                           {"worst", c.worst},
                           {"tolerance", c.tolerance},
                           {"points", c.points},
                           {"note", c.note}});
  return j.dump(2) + "\n";
}

namespace {

const char* kGen[] = {"dz1", "dz2", "dzb1", "dzb2"};

std::string mask_label(Mask m) {
  std::string s;
  for (int g = 0; g < 4; ++g)
    if (m >> g & 1) s += std::string(s.empty() ? "" : "^") + kGen[g];
  return s.empty() ? "1" : s;
}

}  // namespace

std::string star_table_csv(const Metric& m) {
  const StarTable& t = star_table(m);
  std::ostringstream os;
  os << "basis,target,factor_re,factor_im\n";
  for (int mask = 0; mask < 16; ++mask)
    for (const auto& e : t.of(Mask(mask)))
      os << mask_label(Mask(mask)) << "," << mask_label(e.target) << ","
         << e.factor.real() << "," << e.factor.imag() << "\n";
  return os.str();
}

std::string current_csv(const Scenario& s) {
  CurrentForm J = current(s.connection, s.metric, CurrentMethod::ClosedForm);
  CurrentForm Jg = current(s.connection, s.metric, CurrentMethod::Generic);
  Sampler sampler(s.seed);
  auto pts = sampler.points(std::min(s.points, 50), 2.0,
                            s.builtin == "bpst" ? 0.1 : 0.0);
  std::ostringstream os;
  os << "x0,x1,x2,x3,J1,J2,J1bar,J2bar,closed_vs_generic\n";
  for (const auto& z : pts) {
    os << z.x0() << "," << z.x1() << "," << z.x2() << "," << z.x3();
    for (int g = 0; g < 4; ++g)
      os << "," << J.j(Generator(g)).eval(z, s.algebra_dim).norm();
    os << "," << norm_sum(J.form.eval(z) - Jg.form.eval(z)) << "\n";
  }
  return os.str();
}

std::string fields_csv(const Scenario& s) {
  Curvature F = curvature(s.connection, CurvatureMethod::Components);
  Sampler sampler(s.seed);
  auto pts = sampler.points(std::min(s.points, 50), 2.0,
                            s.builtin == "bpst" ? 0.1 : 0.0);
  std::ostringstream os;
  os << "x0,x1,x2,x3,E1,E2,E3,B1,B2,B3,EB_re,EB_im,class\n";
  for (const auto& z : pts) {
    FormValue Fv = F.form.eval(z);
    FieldPair fp = extract_eb(Fv);
    Complex eb = eb_inner(fp, s.trace);
    os << z.x0() << "," << z.x1() << "," << z.x2() << "," << z.x3();
    for (int k = 0; k < 3; ++k) os << "," << fp.E[k].norm();
    for (int k = 0; k < 3; ++k) os << "," << fp.B[k].norm();
    os << "," << eb.real() << "," << eb.imag() << ","
       << to_string(classify_duality(Fv, s.metric, std::max(s.tolerance, 1e-12)))
       << "\n";
  }
  return os.str();
}

std::string optimize_history_csv(const std::vector<OptimizeHistoryRow>& rows) {
  std::ostringstream os;
  os << "iteration,H,ode_residual,step_norm\n";
  for (const auto& r : rows)
    os << r.iteration << "," << r.H << "," << r.ode_residual << ","
       << r.step_norm << "\n";
  return os.str();
}

}  // namespace ymforms
