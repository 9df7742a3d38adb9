#include "ymforms/acceptance.hpp"

#include <iostream>
#include <sstream>

#include "ymforms/variational.hpp"

namespace ymforms {

namespace {

struct Criterion {
  CriterionOutcome out;

  explicit Criterion(int id, std::string title) {
    out.id = id;
    out.title = std::move(title);
    out.pass = true;
  }
  void check(const std::string& what, double worst, double tol) {
    bool ok = worst <= tol;
    std::ostringstream os;
    os << (ok ? "  ok   " : "  FAIL ") << what << ": worst " << worst
       << " (tol " << tol << ")";
    out.details.push_back(os.str());
    out.pass = out.pass && ok;
  }
  void check_true(const std::string& what, bool ok, const std::string& info = "") {
    out.details.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what +
                          (info.empty() ? "" : ": " + info));
    out.pass = out.pass && ok;
  }
  void info(const std::string& line) { out.details.push_back("  info " + line); }
};

FormValue basis_form(Mask m, int n = 1) {
  FormValue v(n);
  v.set(m, identity(n));
  return v;
}

double eigen_gap(const FormValue& v, Complex lambda, const Metric& m) {
  return (star(v, m) - lambda * v).norm();
}

std::vector<Point> sample_points(std::uint64_t seed, int count, double min_abs = 0) {
  return Sampler(seed).points(count, 2.0, min_abs);
}

// seeded polynomial connection with exact derivatives, degree <= deg
Connection random_poly_connection(Sampler& s, int n, int deg = 2,
                                  double scale = 0.25) {
  Connection A;
  A.n = n;
  for (int g = 0; g < 4; ++g) {
    Poly p(n);
    for (int t = 0; t < 3; ++t) {
      std::array<int, 4> pw{};
      int total = 0;
      for (auto& e : pw) {
        e = int(s.uniform(0, 1.999));
        total += e;
      }
      if (total > deg) pw = {int(s.uniform(0, 1.999)), 0, 0, int(s.uniform(0, 1.999))};
      p = p + Poly::monomial(pw, s.matrix(n, scale));
    }
    A.comp[g] = Coefficient::from_poly(p);
  }
  return A;
}

double field_l2(const FormField& f, const QuadratureSpec& q) {
  Complex v = global_inner(f, f, Metric::euclidean(), q);
  return std::sqrt(std::abs(v));
}

// ---- criterion 1: star-table conformance ----

CriterionOutcome c1() {
  Criterion c(1, "star-table conformance (eqs 2.3/2.4, star-A displays, 4.9/4.13, star(vol basis))");
  const double tol = 1e-12;
  const Complex i(0, 1);
  Metric E = Metric::euclidean(), M = Metric::minkowski();

  auto lincomb = [](std::initializer_list<std::pair<Mask, Complex>> parts) {
    FormValue v(1);
    for (auto& [m, c] : parts) v.accumulate(m, CMatrix::Constant(1, 1, c));
    return v;
  };

  double worst = 0;
  for (Mask m : {kM12, kM1b2b})
    worst = std::max(worst, eigen_gap(basis_form(m), Complex(1, 0), E));
  worst = std::max(worst, eigen_gap(lincomb({{kM11b, 1}, {kM22b, 1}}), Complex(1, 0), E));
  for (Mask m : {kM12b, kM21b})
    worst = std::max(worst, eigen_gap(basis_form(m), Complex(-1, 0), E));
  worst = std::max(worst, eigen_gap(lincomb({{kM11b, 1}, {kM22b, -1}}), Complex(-1, 0), E));
  c.check("Euclidean SD/ASD eigenbasis (eq 2.3), eigenvalues +1/-1", worst, tol);

  worst = 0;
  worst = std::max(worst, eigen_gap(lincomb({{kM12, 1}, {kM21b, i}}), i, M));
  worst = std::max(worst, eigen_gap(lincomb({{kM11b, 1}, {kM22b, i}}), i, M));
  worst = std::max(worst, eigen_gap(lincomb({{kM12b, 1}, {kM1b2b, i}}), i, M));
  worst = std::max(worst, eigen_gap(lincomb({{kM12, 1}, {kM21b, -i}}), -i, M));
  worst = std::max(worst, eigen_gap(lincomb({{kM11b, 1}, {kM22b, -i}}), -i, M));
  worst = std::max(worst, eigen_gap(lincomb({{kM12b, 1}, {kM1b2b, -i}}), -i, M));
  c.check("Minkowski SD/ASD eigenbasis (eq 2.4), eigenvalues +i/-i", worst, tol);

  // star-A displays; masks: dz1^dz2^dzb2 = 1011b, dz1^dz2^dzb1 = 0111b,
  // dz2^dzb1^dzb2 = 1110b, dz1^dzb1^dzb2 = 1101b
  auto display_gap = [&](const Metric& m, Mask src, Mask dst, Complex factor) {
    FormValue got = star(basis_form(src), m);
    FormValue want(1);
    want.set(dst, CMatrix::Constant(1, 1, factor));
    return (got - want).norm();
  };
  worst = 0;
  worst = std::max(worst, display_gap(E, 0b0001, 0b1011, 0.5));
  worst = std::max(worst, display_gap(E, 0b0010, 0b0111, -0.5));
  worst = std::max(worst, display_gap(E, 0b0100, 0b1110, 0.5));
  worst = std::max(worst, display_gap(E, 0b1000, 0b1101, -0.5));
  c.check("Euclidean star-A display (1-form table)", worst, tol);
  worst = 0;
  worst = std::max(worst, display_gap(M, 0b0001, 0b1110, 0.5));
  worst = std::max(worst, display_gap(M, 0b0010, 0b0111, 0.5));
  worst = std::max(worst, display_gap(M, 0b0100, 0b1011, 0.5));
  worst = std::max(worst, display_gap(M, 0b1000, 0b1101, 0.5));
  c.check("Minkowski star-A display (1-form table)", worst, tol);

  // star F layouts on six symbolic components
  Sampler s(7);
  const int n = 2;
  FormValue F(n);
  std::array<CMatrix, 6> comp;
  const Mask masks[6] = {kM12, kM1b2b, kM11b, kM12b, kM21b, kM22b};
  for (int k = 0; k < 6; ++k) {
    comp[k] = s.matrix(n);
    F.set(masks[k], comp[k]);
  }
  FormValue expectE(n);
  expectE.set(kM12, comp[0]);
  expectE.set(kM1b2b, comp[1]);
  expectE.set(kM11b, comp[5]);   // F22̄ dz1∧dz̄1
  expectE.set(kM22b, comp[2]);   // F11̄ dz2∧dz̄2
  expectE.set(kM12b, (-comp[3]).eval());
  expectE.set(kM21b, (-comp[4]).eval());
  c.check("Euclidean star-F layout (eq 4.9)", (star(F, E) - expectE).norm(), tol);
  FormValue expectM(n);
  expectM.set(kM12, comp[4]);                  // F21̄
  expectM.set(kM1b2b, (-comp[3]).eval());      // −F12̄
  expectM.set(kM11b, comp[5]);                 // F22̄
  expectM.set(kM22b, (-comp[2]).eval());       // −F11̄
  expectM.set(kM12b, comp[1]);                 // F1̄2̄
  expectM.set(kM21b, (-comp[0]).eval());       // −F12
  c.check("Minkowski star-F layout (eq 4.13)", (star(F, M) - expectM).norm(), tol);

  FormValue vol4 = basis_form(0b1111);
  c.check("Minkowski star(dz1^dz2^dzb1^dzb2) = -4",
          (star(vol4, M) - lincomb({{0, -4}})).norm(), tol);
  c.check("Euclidean star(dz1^dz2^dzb1^dzb2) = +4",
          (star(vol4, E) - lincomb({{0, 4}})).norm(), tol);
  return c.out;
}

// ---- criterion 2: involution laws ----

CriterionOutcome c2() {
  Criterion c(2, "involution laws: star^2 and (star eta)* = star(eta*)");
  const double tol = 1e-12;
  double worst = 0;
  for (auto m : {Metric::euclidean(), Metric::minkowski()}) {
    for (int mask = 0; mask < 16; ++mask) {
      int p = mask_degree(Mask(mask));
      double sgn = ((p * (4 - p)) % 2 ? -1.0 : 1.0) *
                   (m.kind == MetricKind::Minkowski ? -1.0 : 1.0);
      FormValue b = basis_form(Mask(mask));
      worst = std::max(worst,
                       (star(star(b, m), m) - Complex(sgn, 0) * b).norm());
    }
  }
  c.check("star(star(b)) = (-1)^{p(4-p)} b (E), (-1)^{p(4-p)+1} b (M)", worst, tol);

  Sampler s(11);
  worst = 0;
  for (auto m : {Metric::euclidean(), Metric::minkowski()}) {
    for (int p = 0; p <= 4; ++p) {
      for (int k = 0; k < 50; ++k) {
        FormValue v(2);
        for (Mask mk : basis_masks(p)) v.set(mk, s.matrix(2));
        worst = std::max(
            worst, (adjoint_form(star(v, m)) - star(adjoint_form(v), m)).norm());
      }
    }
  }
  c.check("(star eta)* = star(eta*), 50 seeded values per degree, both metrics",
          worst, tol);
  return c.out;
}

// ---- criterion 3: adjointness of D_A and D_A* ----

CriterionOutcome c3() {
  Criterion c(3, "adjointness (D_A a, b) = (a, D_A* b) on bump fields");
  QuadratureSpec quad;  // default R = 6, 16 nodes, Gauss
  Sampler s(23);
  const int n = 2;
  Connection A;
  {
    EtaForm eta;
    eta.n = n;
    eta.a1 = Coefficient::from_poly(Poly::constant(s.matrix(n, 0.4)) +
                                    Poly::monomial({1, 0, 0, 0}, s.matrix(n, 0.15)));
    eta.a2 = Coefficient::from_poly(Poly::constant(s.matrix(n, 0.4)) +
                                    Poly::monomial({0, 1, 0, 0}, s.matrix(n, 0.15)));
    A = from_eta(eta, EtaKind::Skew);
  }
  for (auto m : {Metric::euclidean(), Metric::minkowski()}) {
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
      int p = k % 4;
      FormField alpha = random_bump_field(s, n, p, 4.5);
      FormField beta = random_bump_field(s, n, p + 1, 4.5);
      Complex lhs = global_inner(covariant_d(A, alpha), beta, m, quad);
      Complex rhs = global_inner(alpha, covariant_costar(A, beta, m), m, quad);
      double bound = field_l2(alpha, quad) * field_l2(beta, quad) + 1;
      worst = std::max(worst, std::abs(lhs - rhs) / bound);
    }
    c.check(std::string("|(D_A a,b) - (a,D_A* b)| / (|a||b|+1), 10 pairs, ") +
                (m.kind == MetricKind::Euclidean ? "euclidean" : "minkowski"),
            worst, 1e-3);
  }
  return c.out;
}

// ---- criterion 4: curvature/current cross-checks and Bianchi ----

CriterionOutcome c4() {
  Criterion c(4, "curvature and current cross-checks, Bianchi residual");
  Sampler s(31);
  Connection A = random_poly_connection(s, 2);
  auto pts = sample_points(41, 100);

  Curvature Fc = curvature(A, CurvatureMethod::Components);
  Curvature Fg = curvature(A, CurvatureMethod::Generic);
  double worst = 0;
  for (const auto& z : pts)
    worst = std::max(worst, norm_sum(Fc.form.eval(z) - Fg.form.eval(z)) /
                                std::max(1.0, norm_sum(Fc.form.eval(z))));
  c.check("components vs generic curvature, 100 points", worst, 1e-12);

  for (auto m : {Metric::euclidean(), Metric::minkowski()}) {
    CurrentForm Jc = current(A, m, CurrentMethod::ClosedForm);
    CurrentForm Jg = current(A, m, CurrentMethod::Generic);
    worst = 0;
    for (const auto& z : pts)
      worst = std::max(worst, norm_sum(Jc.form.eval(z) - Jg.form.eval(z)) /
                                  std::max(1.0, norm_sum(Jc.form.eval(z))));
    c.check(std::string("closed-form vs generic current, ") +
                (m.kind == MetricKind::Euclidean ? "euclidean" : "minkowski"),
            worst, 1e-12);
  }

  YmResiduals r = ym_residuals(A, nullptr, Metric::euclidean());
  worst = 0;
  for (const auto& z : pts) worst = std::max(worst, r.at(z).first);
  c.check("Bianchi residual |D_A F_A| for a polynomial connection", worst, 1e-10);
  return c.out;
}

// ---- criterion 5: Lorenz gauge families ----

CriterionOutcome c5() {
  Criterion c(5, "Lorenz gauge: holomorphic-normal family and the A_jbar = A_j* family");
  Sampler s(51);
  const int n = 2;
  auto pts = sample_points(52, 100);

  // normal, A1/A2 holomorphic, A1̄/A2̄ conjugate holomorphic
  Connection A;
  A.n = n;
  {
    CMatrix N1 = s.normal_matrix(n), N2 = s.normal_matrix(n);
    CMatrix M1 = s.normal_matrix(n), M2 = s.normal_matrix(n);
    A.comp[0] = Coefficient::from_poly(Poly::monomial({2, 0, 0, 0}, N1) +
                                       Poly::monomial({0, 1, 0, 0}, 0.5 * N1));
    A.comp[1] = Coefficient::from_poly(Poly::monomial({1, 1, 0, 0}, N2));
    A.comp[2] = Coefficient::from_poly(Poly::monomial({0, 0, 1, 0}, M1) +
                                       Poly::monomial({0, 0, 2, 1}, 0.25 * M1));
    A.comp[3] = Coefficient::from_poly(Poly::monomial({0, 0, 0, 2}, M2));
  }
  Coefficient closed = lorenz_residual(A, Metric::euclidean());
  FormField generic = covariant_costar(A, A.form(), Metric::euclidean());
  double worst = 0;
  for (const auto& z : pts)
    worst = std::max(worst, std::max(closed.eval(z, n).norm(),
                                     norm_sum(generic.eval(z))));
  c.check("Euclidean residual for the holomorphic-normal family", worst, 1e-12);

  // A_jbar = A_j*, d1 A1 = d2 A2*
  Connection B;
  B.n = n;
  {
    CMatrix M = s.matrix(n);
    B.comp[0] = Coefficient::from_poly(Poly::monomial({1, 0, 1, 0}, M.adjoint()));
    B.comp[1] = Coefficient::from_poly(Poly::monomial({1, 0, 0, 1}, M));
    B.comp[2] = adjointed(B.comp[0]);
    B.comp[3] = adjointed(B.comp[1]);
  }
  Coefficient premise =
      B.a(Generator::Dz1).derivative(Wirtinger::D1) -
      adjointed(B.a(Generator::Dz2)).derivative(Wirtinger::D2);
  Coefficient closedM = lorenz_residual(B, Metric::minkowski());
  FormField genericM = covariant_costar(B, B.form(), Metric::minkowski());
  double worst_premise = 0;
  worst = 0;
  for (const auto& z : pts) {
    worst_premise = std::max(worst_premise, premise.eval(z, n).norm());
    worst = std::max(worst, std::max(closedM.eval(z, n).norm(),
                                     norm_sum(genericM.eval(z))));
  }
  c.check("premise d1 A1 - d2 A2* = 0 (independent check)", worst_premise, 1e-12);
  c.check("Minkowski residual for the A_jbar = A_j* family", worst, 1e-12);
  return c.out;
}

// ---- criterion 6: Example 6.3 ----

CriterionOutcome c6() {
  Criterion c(6, "Example 6.3 (h = 0 and h = z1 z2)");
  auto pts = sample_points(61, 100);
  const Complex i(0, 1);

  Poly h0(1);
  Poly h1 = Poly::monomial({1, 1, 0, 0}, CMatrix::Constant(1, 1, Complex(1, 0)));

  for (const Poly* h : {&h0, &h1}) {
    bool zero_case = h->is_zero();
    Example63 ex = build_example_6_3(*h);
    DualityConditionResult sdm =
        duality_residual_thm511(ex.eta, Metric::minkowski(), DualityTarget::SD);
    double worst = 0, cross = 0, fmin = 1e300;
    for (const auto& z : pts) {
      worst = std::max(worst, sdm.residual_at(z));
      cross = std::max(cross, sdm.crosscheck_at(z));
      fmin = std::min(fmin, sdm.generic.form.eval(z).norm());
    }
    std::string tag = zero_case ? "h = 0" : "h = z1 z2";
    c.check("SDM residual, " + tag, worst, 1e-12);
    c.check("predicted vs generic curvature, " + tag, cross, 1e-12);
    c.check_true("F_A nonzero, " + tag, fmin > 1e-6,
                 "min |F| = " + std::to_string(fmin));

    YmResiduals r = ym_residuals(ex.A, nullptr, Metric::minkowski());
    double b = 0, cur = 0;
    for (const auto& z : pts) {
      auto [rb, rc] = r.at(z);
      b = std::max(b, rb);
      cur = std::max(cur, rc);
    }
    c.check("vacuum Bianchi residual, " + tag, b, 1e-6);
    c.check("vacuum current residual |D_A* F_A|, " + tag, cur, 1e-6);
  }

  // [A2, A1*] for h = 0
  Example63 ex0 = build_example_6_3(h0);
  CMatrix J(2, 2);
  J << 0, 1, -1, 0;
  Coefficient bracket = comm(ex0.eta.a2, adjointed(ex0.eta.a1));
  double worst = 0;
  for (const auto& z : pts) {
    Complex f = std::exp(-i * (z.z2 - M_PI / 4)) / std::sqrt(2.0);
    worst = std::max(worst, (bracket.eval(z, 2) - f * J).norm());
  }
  c.check("[A2, A1*] = (1/sqrt2) e^{-i(z2-pi/4)} [[0,1],[-1,0]], h = 0", worst,
          1e-12);

  // gauge normalization of h = z1 z2 reduces to the h = 0 curvature
  Example63 ex1 = build_example_6_3(h1);
  GaugeNormalizeResult g = gauge_normalize(ex1.eta);
  Curvature Fn = curvature(g.normalized, CurvatureMethod::Generic);
  Curvature F0 = curvature(ex0.A, CurvatureMethod::Components);
  worst = g.unitarity_defect;
  for (const auto& z : pts)
    worst = std::max(worst, norm_sum(Fn.form.eval(z) - F0.form.eval(z)));
  c.check("gauge_normalize(h = z1 z2): curvature matches the h = 0 case", worst,
          1e-10);
  return c.out;
}

// ---- criterion 7: Dirac monopole and the B2 = -B1* family ----

void dirac_suite(Criterion& c, const CMatrix& B1, const CMatrix& B2,
                 const std::string& tag, double tol) {
  auto [A, rep] = build_dirac_monopole(B1, B2);
  c.check_true("normality of B1, B2, " + tag, rep.normal1 && rep.normal2);
  c.check("condition (b): B1+B1* = -(B2+B2*), " + tag, rep.cond_b, 1e-12);
  auto pts = sample_points(71, 40);
  Curvature F = curvature(A, CurvatureMethod::Components);
  int misclassified = 0;
  double fmax = 0;
  for (const auto& z : pts) {
    FormValue v = F.form.eval(z);
    fmax = std::max(fmax, v.norm());
    DualityClass cl = classify_duality(v, Metric::euclidean(), 1e-10);
    if (cl != DualityClass::ASD && cl != DualityClass::Zero) ++misclassified;
  }
  c.check_true("Euclidean ASD classification, " + tag, misclassified == 0);
  c.check_true("F nonzero, " + tag, fmax > 1e-8);
  YmResiduals r = ym_residuals(A, nullptr, Metric::euclidean());
  double worst = 0;
  for (const auto& z : pts) {
    auto [rb, rc] = r.at(z);
    worst = std::max(worst, std::max(rb, rc));
  }
  c.check("vacuum residuals, " + tag, worst, tol);
}

CriterionOutcome c7() {
  Criterion c(7, "quantized Dirac monopole and the Cor 6.6 family");
  CMatrix B1(2, 2), B2(2, 2);
  const Complex i(0, 1);
  B1 << -1, 1, -i, -i;
  B2 << 1, -i, -1, -i;
  dirac_suite(c, B1, B2, "paper pair", 1e-10);

  Sampler s(72);
  for (int k = 0; k < 5; ++k) {
    CMatrix N = s.normal_matrix(2);
    while ((N + N.adjoint()).norm() < 0.1) N = s.normal_matrix(2);
    dirac_suite(c, N, (-N.adjoint()).eval(), "seeded #" + std::to_string(k), 1e-10);
  }
  return c.out;
}

// ---- criterion 8: BPST ----

std::vector<Point> bpst_points(std::uint64_t seed, int count) {
  Sampler s(seed);
  std::vector<Point> pts = s.points(count / 2, 2.0, 0.1);
  while (int(pts.size()) < count) {
    Point z = s.point(2.0);
    double nz = std::sqrt(z.r2());
    if (nz < 0.05) continue;
    double target = s.uniform(0.5, 10.0);
    pts.push_back((target / nz) * z);
  }
  return pts;
}

CriterionOutcome c8() {
  Criterion c(8, "BPST chain for mu in {0.5, 1, 4}");
  for (double mu : {0.5, 1.0, 4.0}) {
    std::string tag = "mu = " + std::to_string(mu).substr(0, 3);
    BPSTBundle b = build_bpst({mu});
    auto pts = bpst_points(81, 100);

    double worst = 0;
    for (const auto& z : pts) {
      CMatrix g = b.gamma.eval(z, 2);
      worst = std::max(worst, (g.adjoint() * g - identity(2)).norm());
      worst = std::max(worst, std::abs(g.determinant() - Complex(1, 0)));
    }
    c.check("gamma unitary with det 1, " + tag, worst, 1e-12);

    // eq 5.4 with numeric d of gamma as the oracle
    Coefficient gamma_fd =
        Coefficient::fn(2, [g = b.gamma](const Point& z) { return g.eval(z); });
    std::array<Coefficient, 4> dg;
    for (int w = 0; w < 4; ++w) dg[w] = gamma_fd.derivative(Wirtinger(w));
    FormField eta_f = b.eta.form(), eta_s = adjoint_form(eta_f);
    worst = 0;
    for (const auto& z : pts) {
      CMatrix ginv = b.gamma.eval(z, 2).inverse();
      FormValue skew = eta_f.eval(z) - eta_s.eval(z);
      for (int w = 0; w < 4; ++w)
        worst = std::max(
            worst, (ginv * dg[w].eval(z, 2) +
                    (1.0 / (2 * z.r2())) * skew.coef(Mask(1 << w)))
                       .norm());
    }
    c.check("eq 5.4: gamma^-1 d(gamma) = -(eta - eta*)/(2|z|^2), numeric d, " + tag,
            worst, 1e-8);

    Curvature F = curvature(b.A, CurvatureMethod::Generic);
    FormField deta = exterior_d(eta_f);
    double plus = 0, minus = 0;
    for (const auto& z : pts) {
      double p = b.p(z.r2());
      plus = std::max(plus,
                      norm_sum(F.form.eval(z) - Complex(p, 0) * deta.eval(z)));
      minus = std::max(minus,
                       norm_sum(F.form.eval(z) + Complex(p, 0) * deta.eval(z)));
    }
    int sgn = plus <= minus ? 1 : -1;
    c.check("F_A = s p(z) d(eta) with one global sign (s = " +
                std::to_string(sgn) + "), " + tag,
            std::min(plus, minus), 1e-8);

    int misclassified = 0;
    for (const auto& z : pts)
      if (classify_duality(F.form.eval(z), Metric::euclidean(), 1e-10) !=
          DualityClass::ASD)
        ++misclassified;
    c.check_true("Euclidean ASD classification, " + tag, misclassified == 0);

    YmResiduals r = ym_residuals(b.A, nullptr, Metric::euclidean());
    worst = 0;
    for (const auto& z : pts) {
      auto [rb, rc] = r.at(z);
      worst = std::max(worst, std::max(rb, rc));
    }
    c.check("vacuum residuals on 0.1 <= |z| <= 10, " + tag, worst, 1e-6);

    Curvature Fc = curvature(b.A, CurvatureMethod::Components);
    worst = 0;
    for (const auto& z : pts) {
      double p = b.p(z.r2());
      Complex v = eb_inner(extract_eb(Fc, z), TraceKind::Matrix);
      worst = std::max(worst, std::abs(v + Complex(24 * p * p, 0)) / (24 * p * p));
    }
    c.check("<E,B> = -24 p(z)^2, relative, " + tag, worst, 1e-8);

    RadialProfile f{b.f, [mu](double r) { return mu / ((r + mu) * (r + mu)); }};
    worst = 0;
    for (double lg = -2; lg <= 2; lg += 0.05)
      worst = std::max(worst, profile_ode_residual(f, std::pow(10.0, lg)));
    c.check("profile ODE residual of f, " + tag, worst, 1e-10);
  }
  return c.out;
}

// ---- criterion 9: criticality of BPST ----

CriterionOutcome c9() {
  Criterion c(9, "criticality of BPST (Prop 4.8) with a negative control");
  QuadratureSpec quad;
  quad.nodes_per_axis = 10;
  BPSTBundle b = build_bpst({1.0});

  // perturbed, non-critical control: 1.3x the BPST profile
  RadialProfile fp{[](double r) { return 1.3 * r / (r + 1); },
                   [](double r) { return 1.3 / ((r + 1) * (r + 1)); }};
  Connection Apert = profile_connection(fp);

  Sampler s(91);
  double worst = 0, bound_used = 0, control = 0;
  for (int k = 0; k < 5; ++k) {
    Connection B = random_bump_connection(s, 2, 4.5);
    double bound = 1e-3 * (field_l2(B.form(), quad) + 1);
    bound_used = std::max(bound_used, bound);
    DirectionalDerivative d =
        directional_derivative(b.A, B, nullptr, Metric::euclidean(), quad);
    worst = std::max(worst, std::abs(d.finite_difference) / bound);
    worst = std::max(worst, d.gap / bound);
    DirectionalDerivative dp =
        directional_derivative(Apert, B, nullptr, Metric::euclidean(), quad);
    control = std::max(control, std::abs(dp.finite_difference) / bound);
  }
  c.check("|dH/dt| and |fd - (B, D_A*F_A)| over the 1e-3 scale bound", worst, 1.0);
  c.check_true("negative control exceeds the bound by >= 10x", control >= 10.0,
               "ratio = " + std::to_string(control));
  return c.out;
}

// ---- criterion 10: constant solutions ----

CriterionOutcome c10() {
  Criterion c(10, "constant solutions: 3x3 strictly upper triangular, and Prop 5.13(b)");
  Sampler s(101);

  CMatrix U1 = CMatrix::Zero(3, 3), U2 = CMatrix::Zero(3, 3);
  U1(0, 1) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
  U1(1, 2) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
  U1(0, 2) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
  U2(0, 1) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
  U2(1, 2) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
  auto [A, rep] = build_constant(U1, U2, Metric::euclidean());
  double worst = 0;
  for (auto m : {Metric::euclidean(), Metric::minkowski()}) {
    CurrentForm J = current(A, m, CurrentMethod::ClosedForm);
    CurrentForm Jg = current(A, m, CurrentMethod::Generic);
    Point z{};
    worst = std::max(worst, norm_sum(J.form.eval(z)));
    c.info(std::string("closed vs generic current gap (") +
           (m.kind == MetricKind::Euclidean ? "E" : "M") +
           "): " + std::to_string(norm_sum(J.form.eval(z) - Jg.form.eval(z))));
  }
  c.check("strictly upper triangular 3x3 constants: J = 0 exactly (Cor 4.5)",
          worst, 1e-12);

  // Prop 5.13(b): A1* = iA1, A2 normal => the Minkowski SD condition set
  double cond = 0, ident = 0, fmin = 1e300;
  for (int k = 0; k < 5; ++k) {
    CMatrix A1 = (std::polar(1.0, -M_PI / 4) * s.hermitian(2)).eval();
    CMatrix A2 = s.normal_matrix(2);
    auto [B, r] = build_constant(A1, A2, Metric::minkowski());
    cond = std::max(cond, r.mink_sd);
    ident = std::max(ident, r.component_identity_defect);
    FormValue F = curvature(B, CurvatureMethod::Components).form.eval(Point{});
    fmin = std::min(fmin, F.norm());
    if (k == 0) c.info("strict star classification: " + std::string(to_string(r.strict_class)));
  }
  c.check("Prop 5.13(b) SD condition set (A1,A2 normal, [A1*-iA1,A2]=0)", cond,
          1e-12);
  c.check("eq 4.20 component identities F_{2 1b} = iF_{12}, F_{2 2b} = iF_{1 1b}",
          ident, 1e-12);
  c.check_true("nontrivial curvature in the 5.13(b) family", fmin > 1e-8);
  return c.out;
}

// ---- criterion 11: <E,B> sign laws ----

void sign_law(Criterion& c, const Connection& A, const Metric& m, bool sd,
              const std::string& tag, const std::vector<Point>& pts) {
  Curvature F = curvature(A, CurvatureMethod::Components);
  double worst = 0;
  for (const auto& z : pts) {
    Complex v = eb_inner(extract_eb(F, z), TraceKind::Matrix);
    double scale = std::max(1.0, std::abs(v));
    double off, wrong;
    if (m.kind == MetricKind::Euclidean) {
      off = std::abs(v.imag());
      wrong = std::max(0.0, sd ? -v.real() : v.real());
    } else {
      off = std::abs(v.real());
      wrong = std::max(0.0, sd ? -v.imag() : v.imag());
    }
    worst = std::max(worst, std::max(off, wrong) / scale);
  }
  c.check("<E,B> ray (Cor 7.4): " + tag, worst, 1e-8);
}

CriterionOutcome c11() {
  Criterion c(11, "<E,B> sign laws across the verified instanton families");
  auto pts = sample_points(111, 60, 0.1);
  Sampler s(112);

  sign_law(c, build_bpst({1.0}).A, Metric::euclidean(), false, "BPST (ASD, < 0)",
           pts);

  CMatrix B1(2, 2), B2(2, 2);
  const Complex i(0, 1);
  B1 << -1, 1, -i, -i;
  B2 << 1, -i, -1, -i;
  sign_law(c, build_dirac_monopole(B1, B2).first, Metric::euclidean(), false,
           "Dirac monopole (ASD, < 0)", pts);
  CMatrix N = s.normal_matrix(2);
  while ((N + N.adjoint()).norm() < 0.1) N = s.normal_matrix(2);
  sign_law(c, build_dirac_monopole(N, (-N.adjoint()).eval()).first,
           Metric::euclidean(), false, "Cor 6.6 family (ASD, < 0)", pts);

  // Euclidean SD family of the duality theorem: A1 = 0, A2 = z1 N (commuting)
  {
    EtaForm eta;
    eta.n = 2;
    eta.holomorphic = true;
    eta.normal = true;
    eta.a2 = Coefficient::from_poly(Poly::monomial({1, 0, 0, 0}, s.normal_matrix(2)));
    sign_law(c, from_eta(eta, EtaKind::Skew), Metric::euclidean(), true,
             "holomorphic-normal SD family (> 0)", pts);
  }

  // Minkowski constant families, SD and ASD
  {
    CMatrix A1 = (std::polar(1.0, -M_PI / 4) * s.hermitian(2)).eval();
    CMatrix A2 = s.normal_matrix(2);
    sign_law(c, build_constant(A1, A2, Metric::minkowski()).first,
             Metric::minkowski(), true, "Prop 5.13(b) SD (in iR>=0)", pts);
    CMatrix A1a = (std::polar(1.0, M_PI / 4) * s.hermitian(2)).eval();
    sign_law(c, build_constant(A1a, A2, Metric::minkowski()).first,
             Metric::minkowski(), false, "Prop 5.13(b) ASD (in -iR>=0)", pts);
  }

  sign_law(c, build_example_6_3(Poly(1)).A, Metric::minkowski(), true,
           "Example 6.3 (in iR>=0)", pts);
  return c.out;
}

// ---- criterion 12: profile optimization ----

CriterionOutcome c12() {
  Criterion c(12, "profile optimization recovers the BPST profile");
  const double mu = 1.0;
  ProfileParam init = ProfileParam::bpst_knots(mu, 7);
  // perturb six interior knots by +-10%
  for (int k = 1; k <= 6; ++k) init.values[k] *= (k % 2 ? 1.1 : 0.9);

  QuadratureSpec quad;
  quad.nodes_per_axis = 8;
  OptimizeResult r = optimize_profile(init, mu, quad);

  bool monotone = true;
  for (size_t k = 1; k < r.history.size(); ++k)
    if (r.history[k].H > r.history[k - 1].H + 1e-14) monotone = false;
  c.check_true("H non-increasing across accepted steps", monotone);
  double ratio = r.initial_residual / std::max(r.final_residual, 1e-300);
  c.check_true("profile-ODE residual reduced by >= 10x",
               ratio >= 10.0,
               "initial " + std::to_string(r.initial_residual) + " -> final " +
                   std::to_string(r.final_residual) + " (x" +
                   std::to_string(ratio) + ")");
  return c.out;
}

}  // namespace

CriterionOutcome run_criterion(int id) {
  switch (id) {
    case 1: return c1();
    case 2: return c2();
    case 3: return c3();
    case 4: return c4();
    case 5: return c5();
    case 6: return c6();
    case 7: return c7();
    case 8: return c8();
    case 9: return c9();
    case 10: return c10();
    case 11: return c11();
    case 12: return c12();
    default: throw std::invalid_argument("criterion id must be 1..12");
  }
}

void print_outcome(std::ostream& os, const CriterionOutcome& o) {
  os << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << o.id << ": "
     << o.title << "\n";
  for (const auto& d : o.details) os << d << "\n";
}

}  // namespace ymforms
