#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

using namespace ymforms;
using namespace ymtest;

namespace {

std::vector<Point> pts(int count = 20, std::uint64_t seed = 33, double min_abs = 0) {
  return Sampler(seed).points(count, 1.5, min_abs);
}

}  // namespace

TEST_CASE("from_eta builds skew and Hermitian connections") {
  Sampler s(34);
  EtaForm eta;
  eta.n = 2;
  eta.a1 = Coefficient::from_poly(Poly::monomial({1, 0, 0, 0}, s.matrix(2)));
  eta.a2 = Coefficient::constant(s.matrix(2));

  Connection skew = from_eta(eta, EtaKind::Skew);
  Connection herm = from_eta(eta, EtaKind::Hermitian);
  for (const auto& z : pts()) {
    FormValue a = skew.form().eval(z);
    CHECK((adjoint_form(a) + a).norm() < 1e-13);
    FormValue h = herm.form().eval(z);
    CHECK((adjoint_form(h) - h).norm() < 1e-13);
  }
  EtaForm zero;
  zero.n = 2;
  CHECK(from_eta(zero, EtaKind::Skew).form().eval(Point{}).norm() == 0.0);
}

TEST_CASE("f u^-1 du is skew-Hermitian (BPST data)") {
  BPSTBundle b = build_bpst({1.0});
  for (const auto& z : pts(15, 35, 0.2)) {
    FormValue a = b.A.form().eval(z);
    CHECK((adjoint_form(a) + a).norm() < 1e-12);
  }
}

TEST_CASE("Maurer-Cartan residuals") {
  // A = g^-1 dg for a polynomial unipotent g
  CMatrix E12 = CMatrix::Zero(2, 2);
  E12(0, 1) = 1;
  // g = I + z1 z2 E12, g^-1 = I − z1 z2 E12
  Poly gp = Poly::constant(identity(2)) + Poly::monomial({1, 1, 0, 0}, E12);
  Poly gi = Poly::constant(identity(2)) - Poly::monomial({1, 1, 0, 0}, E12);
  Connection A;
  A.n = 2;
  for (int g = 0; g < 4; ++g)
    A.comp[g] = Coefficient::from_poly(gi * gp.wirtinger(Wirtinger(g)));
  MaurerCartanResidual r = maurer_cartan_residual(A.form());
  for (const auto& z : pts()) CHECK(r.total_at(z) < 1e-13);

  // constant commuting eta
  EtaForm eta;
  eta.n = 2;
  eta.a1 = Coefficient::constant(pauli(3));
  eta.a2 = Coefficient::constant((2.0 * pauli(3)).eval());
  MaurerCartanResidual rc = maurer_cartan_residual(eta.form());
  for (const auto& z : pts()) {
    CHECK(rc.total_at(z) == 0.0);
    CHECK(rc.dbar_at(z) == 0.0);
    CHECK(rc.ff12_at(z) == 0.0);
  }

  // gamma^-1 d gamma is flat away from the origin (numeric d as oracle)
  BPSTBundle b = build_bpst({1.0});
  MaurerCartanResidual rg = maurer_cartan_residual(b.gamma_mc);
  for (const auto& z : pts(10, 36, 0.3)) CHECK(rg.total_at(z) < 1e-12);
  Coefficient gamma_opaque =
      Coefficient::fn(2, [g = b.gamma](const Point& z) { return g.eval(z); });
  for (const auto& z : pts(5, 37, 0.5)) {
    CMatrix gi2 = b.gamma.eval(z, 2).inverse();
    for (int w = 0; w < 4; ++w) {
      CMatrix numeric = gi2 * wirtinger(gamma_opaque, z, Wirtinger(w));
      CMatrix exact = b.gamma_mc.coef(Mask(1 << w)).eval(z, 2);
      CHECK((numeric - exact).norm() < 1e-8);
    }
  }
}

TEST_CASE("duality conditions of the holomorphic-normal theorem") {
  Sampler s(38);
  // Euclidean SD with pointwise commuting A1, A2
  CMatrix N = s.normal_matrix(2);
  EtaForm eta;
  eta.n = 2;
  eta.holomorphic = true;
  eta.normal = true;
  eta.a1 = Coefficient::from_poly(Poly::monomial({0, 1, 0, 0}, N));
  eta.a2 = Coefficient::from_poly(Poly::monomial({1, 0, 0, 0}, (2.0 * N).eval()));
  DualityConditionResult r =
      duality_residual_thm511(eta, Metric::euclidean(), DualityTarget::SD);
  for (const auto& z : pts()) {
    CHECK(r.residual_at(z) < 1e-13);
    CHECK(r.crosscheck_at(z) < 1e-12);
  }

  // closed eta: F vanishes identically
  EtaForm closed;
  closed.n = 2;
  closed.holomorphic = true;
  closed.normal = true;
  closed.a1 = Coefficient::from_poly(Poly::monomial({1, 0, 0, 0}, N));
  DualityConditionResult rc =
      duality_residual_thm511(closed, Metric::euclidean(), DualityTarget::SD);
  for (const auto& z : pts()) CHECK(rc.generic.form.eval(z).norm() < 1e-13);

  // Example 6.3 satisfies the Minkowski SD identity with both sides zero
  Example63 ex = build_example_6_3(Poly(1));
  DualityConditionResult rm =
      duality_residual_thm511(ex.eta, Metric::minkowski(), DualityTarget::SD);
  for (const auto& z : pts()) {
    CHECK(rm.residual_at(z) < 1e-13);
    CHECK(rm.crosscheck_at(z) < 1e-12);
  }
  CHECK_THROWS_AS(duality_residual_thm511(EtaForm{}, Metric::euclidean(),
                                          DualityTarget::SD),
                  std::invalid_argument);
}

TEST_CASE("constant connections (Prop 5.13)") {
  Sampler s(39);
  // A1* = iA1 and A2 normal: the Minkowski SD condition set
  CMatrix A1 = (std::polar(1.0, -M_PI / 4) * s.hermitian(2)).eval();
  CMatrix A2 = s.normal_matrix(2);
  auto [A, rep] = build_constant(A1, A2, Metric::minkowski());
  CHECK(near(rep.mink_sd, 1e-12));
  CHECK(near(rep.component_identity_defect, 1e-12));
  CHECK(rep.normal1);
  CHECK(rep.normal2);

  // commuting normal A1 = A2 = s3: flat
  auto [B, repB] = build_constant(pauli(3), pauli(3), Metric::euclidean());
  CHECK(curvature(B, CurvatureMethod::Components).form.eval(Point{}).norm() <
        1e-14);
  CHECK(repB.strict_class == DualityClass::Zero);

  // Euclidean ASD condition pair: the condition set forces F = 0 here
  // (brute-force F from the commutators confirms), so the classification
  // degenerates to Zero, which is ASD-compatible
  auto [C, repC] = build_constant(CMatrix::Zero(2, 2), s.normal_matrix(2),
                                  Metric::euclidean());
  CHECK(near(repC.euclid_asd, 1e-12));
  FormValue F = curvature(C, CurvatureMethod::Components).form.eval(Point{});
  CMatrix c12 = commutator(CMatrix::Zero(2, 2), A2);
  CHECK(F.norm() < 1e-13);
  CHECK(c12.norm() < 1e-13);
  CHECK(repC.strict_class == DualityClass::Zero);
}

TEST_CASE("Example 6.3 data") {
  const Complex i(0, 1);
  Example63 ex = build_example_6_3(Poly(1));
  // h = 0: [A2, A1*] = (1/sqrt 2) e^{-i(z2-pi/4)} [[0,1],[-1,0]]
  CMatrix J(2, 2);
  J << 0, 1, -1, 0;
  Coefficient bracket = comm(ex.eta.a2, adjointed(ex.eta.a1));
  for (const auto& z : pts()) {
    Complex f = std::exp(-i * (z.z2 - M_PI / 4)) / std::sqrt(2.0);
    CHECK((bracket.eval(z, 2) - f * J).norm() < 1e-13);
  }
  // flags hold numerically
  EtaFlagDefects d = verify_eta_flags(ex.eta, pts(10));
  CHECK(near(d.holomorphic, 1e-12));
  CHECK(near(d.normal, 1e-12));
  // [dbar_j A1*, A2] = 0 at sampled points
  for (const auto& z : pts(10)) {
    for (auto w : {Wirtinger::Db1, Wirtinger::Db2}) {
      CMatrix da1s = wirtinger(adjointed(ex.eta.a1), z, w);
      CHECK(commutator(da1s, ex.eta.a2.eval(z, 2)).norm() < 1e-12);
    }
  }
  // holomorphic normal coefficients have commuting ranges (Fuglede)
  auto some = pts(6, 40);
  for (const auto& za : some)
    for (const auto& zb : some)
      CHECK(commutator(ex.eta.a2.eval(za, 2), ex.eta.a2.eval(zb, 2)).norm() <
            1e-12);
  // curvature is nonzero
  CHECK(curvature(ex.A, CurvatureMethod::Components)
            .form.eval(Point::from_x(0.1, 0.2, 0.3, 0.4))
            .norm() > 0.5);
}

TEST_CASE("quantized Dirac monopole") {
  const Complex i(0, 1);
  CMatrix B1(2, 2), B2(2, 2);
  B1 << -1, 1, -i, -i;
  B2 << 1, -i, -1, -i;
  auto [A, rep] = build_dirac_monopole(B1, B2);
  CHECK(rep.normal1);
  CHECK(rep.normal2);
  CHECK(near(rep.cond_b, 1e-13));
  CHECK(rep.cond_a > 1);
  CHECK(rep.strict_class == DualityClass::ASD);
  CHECK(rep.curvature_nonzero);

  // Cor 6.6 family: B2 = -B1*, B1 normal with B1 + B1* != 0
  Sampler s(41);
  CMatrix N = s.normal_matrix(2);
  while ((N + N.adjoint()).norm() < 0.1) N = s.normal_matrix(2);
  auto [A2c, rep2] = build_dirac_monopole(N, (-N.adjoint()).eval());
  CHECK(rep2.strict_class == DualityClass::ASD);
  CHECK(rep2.curvature_nonzero);
  YmResiduals r = ym_residuals(A2c, nullptr, Metric::euclidean());
  for (const auto& z : pts()) {
    auto [rb, rc] = r.at(z);
    CHECK(rb < 1e-12);
    CHECK(rc < 1e-12);
  }

  // B1 = B2 = iI: condition (a) holds and F is identically zero
  auto [A3, rep3] = build_dirac_monopole((i * identity(2)).eval(),
                                         (i * identity(2)).eval());
  CHECK(near(rep3.cond_a, 1e-14));
  CHECK_FALSE(rep3.curvature_nonzero);
  // brute-force F from the component formulas: every term carries a
  // commutator or B + B*, all zero for iI
  CHECK(curvature(A3, CurvatureMethod::Components).form
            .eval(Point::from_x(0.5, 0.1, -0.2, 0.8))
            .norm() < 1e-14);
}

TEST_CASE("skew-Hermitian instanton invariants (Prop 5.7)") {
  // skew A => F skew; strictly SD/ASD + skew => source-free
  BPSTBundle b = build_bpst({2.0});
  Curvature F = curvature(b.A, CurvatureMethod::Components);
  for (const auto& z : pts(10, 42, 0.2)) {
    FormValue v = F.form.eval(z);
    CHECK((adjoint_form(v) + v).norm() < 1e-11);
    CHECK(classify_duality(v, Metric::euclidean(), 1e-9) == DualityClass::ASD);
  }
}

TEST_CASE("BPST bundle data") {
  BPSTBundle b = build_bpst({1.0});
  CHECK_THROWS_AS(build_bpst({-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(b.gamma.eval(Point{}), std::domain_error);
  // eq 5.4: gamma^-1 dgamma = -(eta - eta*)/(2|z|^2) with exact derivatives
  FormField eta_f = b.eta.form(), eta_s = adjoint_form(eta_f);
  for (const auto& z : pts(10, 43, 0.3)) {
    CMatrix gi = b.gamma.eval(z, 2).inverse();
    FormValue skew = eta_f.eval(z) - eta_s.eval(z);
    for (int w = 0; w < 4; ++w) {
      CMatrix lhs = gi * wirtinger(b.gamma, z, Wirtinger(w));
      CMatrix rhs = (-1.0 / (2 * z.r2())) * skew.coef(Mask(1 << w));
      CHECK((lhs - rhs).norm() < 1e-11);
    }
  }
  // F12 = F_1b2b = 0 and F_22b = -F_11b
  Curvature F = curvature(b.A, CurvatureMethod::Components);
  for (const auto& z : pts(10, 44, 0.2)) {
    FormValue v = F.form.eval(z);
    CHECK(v.coef(kM12).norm() < 1e-12);
    CHECK(v.coef(kM1b2b).norm() < 1e-12);
    CHECK((v.coef(kM22b) + v.coef(kM11b)).norm() < 1e-12);
  }
}

TEST_CASE("profile ODE residual") {
  RadialProfile bpst{[](double r) { return r / (r + 2.0); },
                     [](double r) { return 2.0 / ((r + 2.0) * (r + 2.0)); }};
  for (double r : {0.1, 1.0, 7.5}) CHECK(near(profile_ode_residual(bpst, r), 1e-15));

  RadialProfile zerof{[](double) { return 0.0; }, [](double) { return 0.0; }};
  RadialProfile onef{[](double) { return 1.0; }, [](double) { return 0.0; }};
  RadialProfile c07{[](double) { return 0.7; }, [](double) { return 0.0; }};
  for (double r : {0.5, 2.0}) {
    CHECK(profile_ode_residual(zerof, r) == 0.0);
    CHECK(profile_ode_residual(onef, r) == 0.0);
    CHECK(profile_ode_residual(c07, r) > 1e-3);
  }
}

TEST_CASE("gauge normalization") {
  // Example 6.3 with h = z1 z2 reduces exactly to the h = 0 connection
  Poly h = Poly::monomial({1, 1, 0, 0}, CMatrix::Constant(1, 1, Complex(1, 0)));
  Example63 ex = build_example_6_3(h);
  GaugeNormalizeResult g = gauge_normalize(ex.eta);
  CHECK(near(g.unitarity_defect, 1e-10));
  CHECK_FALSE(g.full_subtraction);
  Example63 ex0 = build_example_6_3(Poly(1));
  CHECK((g.kept_a1 - ex0.eta.a1.eval(Point{}, 2)).norm() < 1e-13);
  Curvature Fn = curvature(g.normalized, CurvatureMethod::Generic);
  Curvature F0 = curvature(ex0.A, CurvatureMethod::Components);
  for (const auto& z : pts())
    CHECK(norm_sum(Fn.form.eval(z) - F0.form.eval(z)) < 1e-11);
  // and the directly-assembled normal form agrees
  Curvature Fd = curvature(g.normal_form, CurvatureMethod::Components);
  for (const auto& z : pts())
    CHECK(norm_sum(Fd.form.eval(z) - F0.form.eval(z)) < 1e-11);

  // closed commuting holomorphic eta: gauge equivalent to zero
  Sampler s(45);
  CMatrix N = s.normal_matrix(2);
  EtaForm flat;
  flat.n = 2;
  flat.holomorphic = true;
  flat.normal = true;
  flat.a1 = Coefficient::from_poly(Poly::monomial({0, 1, 0, 0}, N));
  flat.a2 = Coefficient::from_poly(Poly::monomial({1, 0, 0, 0}, N) +
                                   Poly::monomial({0, 2, 0, 0}, (0.5 * N).eval()));
  GaugeNormalizeResult gf = gauge_normalize(flat);
  CHECK(gf.full_subtraction);
  for (const auto& z : pts())
    CHECK(norm_sum(gf.normalized.form().eval(z)) < 1e-10);

  // eta already in normal form (constant A1, z2-only A2): identity gauge
  EtaForm cn;
  cn.n = 2;
  cn.holomorphic = true;
  cn.normal = true;
  CMatrix D(2, 2);
  D << 0, 0, 0, Complex(1, -1);
  cn.a1 = Coefficient::from_poly(Poly::constant(D));
  cn.a2 = Coefficient::fn(
      2, [](const Point& z) { return (std::cos(z.z2) * pauli(1)).eval(); });
  GaugeNormalizeResult gc = gauge_normalize(cn);
  for (const auto& z : pts(5))
    CHECK((gc.g.g.eval(z, 2) - identity(2)).norm() < 1e-13);
}
