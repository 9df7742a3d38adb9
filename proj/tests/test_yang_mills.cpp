#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"

using namespace ymforms;
using namespace ymtest;

namespace {

Connection poly_connection(Sampler& s, int n, double scale = 0.3) {
  Connection A;
  A.n = n;
  for (int g = 0; g < 4; ++g) {
    Poly p(n);
    for (int t = 0; t < 3; ++t)
      p = p + Poly::monomial({int(s.uniform(0, 1.99)), int(s.uniform(0, 1.99)),
                              int(s.uniform(0, 1.99)), int(s.uniform(0, 1.99))},
                             s.matrix(n, scale));
    A.comp[g] = Coefficient::from_poly(p);
  }
  return A;
}

std::vector<Point> pts(int count = 25, std::uint64_t seed = 17) {
  return Sampler(seed).points(count, 1.5);
}

}  // namespace

TEST_CASE("curvature of constant commuting components vanishes") {
  Connection A;
  A.n = 2;
  CMatrix d = pauli(3);
  for (int g = 0; g < 4; ++g)
    A.comp[g] = Coefficient::constant(((g + 1) * 0.5 * d).eval());
  Curvature F = curvature(A, CurvatureMethod::Components);
  CHECK(F.form.eval(Point{}).norm() < 1e-14);
}

TEST_CASE("scalar case: F = dA") {
  Sampler s(18);
  Connection A = poly_connection(s, 1);
  FormField dA = exterior_d(A.form());
  Curvature F = curvature(A, CurvatureMethod::Components);
  for (const auto& z : pts())
    CHECK(norm_sum(F.form.eval(z) - dA.eval(z)) < 1e-12);
}

TEST_CASE("components and generic curvature agree") {
  Sampler s(19);
  Connection A = poly_connection(s, 3);
  Curvature a = curvature(A, CurvatureMethod::Components);
  Curvature b = curvature(A, CurvatureMethod::Generic);
  for (const auto& z : pts())
    CHECK(norm_sum(a.form.eval(z) - b.form.eval(z)) < 1e-12);
}

TEST_CASE("covariant derivative: A = 0, Bianchi, Leibniz") {
  Sampler s(20);
  Connection zero;
  zero.n = 2;
  FormField T(2);
  T.set(kM12, Coefficient::from_poly(Poly::monomial({1, 0, 1, 0}, s.matrix(2))));
  for (const auto& z : pts())
    CHECK(norm_sum(covariant_d(zero, T).eval(z) - exterior_d(T).eval(z)) == 0.0);

  Connection A = poly_connection(s, 2);
  Curvature F = curvature(A, CurvatureMethod::Components);
  FormField bianchi = covariant_d(A, F.form);
  for (const auto& z : pts()) CHECK(norm_sum(bianchi.eval(z)) < 1e-11);

  // D_A(T1∧T2) = (D_A T1)∧T2 + (−1)^p T1∧(D_A T2)
  FormField T1(2), T2(2);
  T1.set(Mask(1 << 0), Coefficient::from_poly(Poly::monomial({0, 1, 0, 0}, s.matrix(2))));
  T1.set(Mask(1 << 2), Coefficient::from_poly(Poly::monomial({0, 0, 0, 1}, s.matrix(2))));
  T2.set(kM22b, Coefficient::from_poly(Poly::monomial({1, 0, 0, 0}, s.matrix(2))));
  FormField lhs = covariant_d(A, wedge(T1, T2));
  FormField rhs = wedge(covariant_d(A, T1), T2) +
                  Complex(-1, 0) * wedge(T1, covariant_d(A, T2));
  for (const auto& z : pts())
    CHECK(norm_sum(lhs.eval(z) - rhs.eval(z)) < 1e-12);
}

TEST_CASE("covariant co-derivative reduces to -star d star for A = 0") {
  Connection zero;
  zero.n = 1;
  Sampler s(21);
  FormField beta(1);
  for (Mask m : basis_masks(2))
    beta.set(m, Coefficient::from_poly(Poly::monomial({1, 1, 0, 0}, s.matrix(1))));
  Metric E = Metric::euclidean();
  FormField lhs = covariant_costar(zero, beta, E);
  FormField rhs = Complex(-1, 0) * star(exterior_d(star(beta, E)), E);
  for (const auto& z : pts())
    CHECK(norm_sum(lhs.eval(z) - rhs.eval(z)) < 1e-13);
}

TEST_CASE("scalar polynomial current matches the displayed-table oracle") {
  // n = 1, Euclidean: J = -star d star dA with the oracle star tables taken
  // from the displayed formulas and FD derivatives
  Sampler s(22);
  Poly a1(1);
  a1 = a1 + Poly::monomial({1, 0, 1, 0}, s.matrix(1)) +
       Poly::monomial({0, 2, 0, 0}, s.matrix(1));
  Poly a2 = Poly::monomial({0, 1, 0, 1}, s.matrix(1));
  Connection A;
  A.n = 1;
  A.comp[0] = Coefficient::from_poly(a1);
  A.comp[1] = Coefficient::from_poly(a2);

  CurrentForm J = current(A, Metric::euclidean(), CurrentMethod::ClosedForm);

  ScalarForm a;
  a.c[0b0001] = [a1](const Point& z) { return a1.eval(z)(0, 0); };
  a.c[0b0010] = [a2](const Point& z) { return a2.eval(z)(0, 0); };
  ScalarForm oracle = a.d().star_euclid().d().star_euclid();
  for (const auto& z : pts(10)) {
    for (int g = 0; g < 4; ++g) {
      Complex mine = J.j(Generator(g)).eval(z, 1)(0, 0);
      Complex want = -oracle.eval(1 << g, z);
      CHECK(approx(mine, want, 2e-5));
    }
  }
}

TEST_CASE("currents: closed form vs generic, both metrics") {
  Sampler s(23);
  Connection A = poly_connection(s, 2);
  for (auto m : {Metric::euclidean(), Metric::minkowski()}) {
    CurrentForm a = current(A, m, CurrentMethod::ClosedForm);
    CurrentForm b = current(A, m, CurrentMethod::Generic);
    for (const auto& z : pts())
      CHECK(norm_sum(a.form.eval(z) - b.form.eval(z)) <
            1e-12 * std::max(1.0, norm_sum(a.form.eval(z))));
  }
}

TEST_CASE("Lorenz gauge families") {
  Sampler s(24);
  // holomorphic normal + conjugate-holomorphic normal: Euclidean residual 0,
  // and all commutator terms vanish individually
  CMatrix N = s.normal_matrix(2), M = s.normal_matrix(2);
  Connection A;
  A.n = 2;
  A.comp[0] = Coefficient::from_poly(Poly::monomial({2, 1, 0, 0}, N));
  A.comp[1] = Coefficient::from_poly(Poly::monomial({1, 0, 0, 0}, N));
  A.comp[2] = Coefficient::from_poly(Poly::monomial({0, 0, 1, 1}, M));
  A.comp[3] = Coefficient::from_poly(Poly::monomial({0, 0, 0, 2}, M));
  Coefficient res = lorenz_residual(A, Metric::euclidean());
  for (const auto& z : pts()) {
    CHECK(res.eval(z, 2).norm() < 1e-12);
    for (int g = 0; g < 4; ++g) {
      CMatrix v = A.comp[g].eval(z, 2);
      CHECK(commutator(v, v.adjoint()).norm() < 1e-12);
    }
  }

  // A_jbar = A_j* with d1A1 - d2A2* = 0: Minkowski residual 0
  CMatrix W = s.matrix(2);
  Connection B;
  B.n = 2;
  B.comp[0] = Coefficient::from_poly(Poly::monomial({1, 0, 1, 0}, W.adjoint()));
  B.comp[1] = Coefficient::from_poly(Poly::monomial({1, 0, 0, 1}, W));
  B.comp[2] = adjointed(B.comp[0]);
  B.comp[3] = adjointed(B.comp[1]);
  Coefficient resM = lorenz_residual(B, Metric::minkowski());
  FormField genM = covariant_costar(B, B.form(), Metric::minkowski());
  for (const auto& z : pts()) {
    CHECK(resM.eval(z, 2).norm() < 1e-12);
    CHECK(norm_sum(genM.eval(z)) < 1e-12);
  }
}

TEST_CASE("gauge transforms") {
  Sampler s(25);
  Connection A = poly_connection(s, 2);

  // constant g commuting with all values of A: A unchanged
  Connection Ad;
  Ad.n = 2;
  for (int g = 0; g < 4; ++g)
    Ad.comp[g] = Coefficient::constant(((g + 1) * 0.3 * pauli(3)).eval());
  GaugeMap cg{Coefficient::constant((0.5 * identity(2) + 0.25 * pauli(3)).eval()),
              false};
  Connection Adg = gauge_transform(Ad, cg);
  for (const auto& z : pts(5))
    CHECK(norm_sum(Adg.form().eval(z) - Ad.form().eval(z)) < 1e-13);

  // unitary gauge transform of a skew-Hermitian connection stays skew
  EtaForm eta;
  eta.n = 2;
  eta.a1 = Coefficient::from_poly(Poly::monomial({1, 0, 0, 0}, s.matrix(2, 0.4)));
  eta.a2 = Coefficient::constant(s.matrix(2, 0.4));
  Connection S = from_eta(eta, EtaKind::Skew);
  Poly X(2);
  {
    CMatrix H = s.matrix(2, 0.4);
    X = Poly::monomial({1, 0, 0, 0}, ((H - H.adjoint()) / 2).eval());
    // constant skew exponent: unitary g, exact derivatives
    X = Poly::constant(((H - H.adjoint()) / 2).eval());
  }
  GaugeMap ug{Coefficient::constant(X.eval(Point{}).exp().eval()), true};
  Connection Sg = gauge_transform(S, ug);
  for (const auto& z : pts(10)) {
    FormValue v = Sg.form().eval(z);
    CHECK((adjoint_form(v) + v).norm() < 1e-12);
  }

  // curvature conjugates componentwise and the duality class is preserved
  GaugeMap pg{Coefficient::from_poly(
                  Poly::constant(identity(2)) +
                  Poly::monomial({1, 0, 0, 0}, (0.3 * pauli(1)).eval())),
              false};
  Connection Ag = gauge_transform(A, pg);
  Curvature F = curvature(A, CurvatureMethod::Components);
  Curvature Fg = curvature(Ag, CurvatureMethod::Generic);
  for (const auto& z : pts(10)) {
    CMatrix gv = pg.g.eval(z, 2);
    CMatrix gi = gv.inverse();
    FormValue want(2), got = Fg.form.eval(z);
    FormValue Fv = F.form.eval(z);
    for (Mask m : basis_masks(2)) want.set(m, (gi * Fv.coef(m) * gv).eval());
    CHECK((got - want).norm() < 1e-9 * std::max(1.0, want.norm()));
    CHECK(classify_duality(got, Metric::euclidean(), 1e-8) ==
          classify_duality(Fv, Metric::euclidean(), 1e-8));
  }
}

TEST_CASE("singular gauge map reports the location") {
  Connection A;
  A.n = 1;
  A.comp[0] = Coefficient::constant(CMatrix::Constant(1, 1, 1.0));
  GaugeMap g{Coefficient::from_poly(Poly::monomial({1, 0, 0, 0},
                                                   CMatrix::Constant(1, 1, 1.0))),
             false};
  Connection Ag = gauge_transform(A, g);
  CHECK_THROWS_AS(Ag.comp[0].eval(Point{}), std::domain_error);
}

TEST_CASE("skew-Hermitian curvature relations (eqs 4.22/4.23)") {
  Sampler s(26);
  EtaForm eta;
  eta.n = 2;
  eta.a1 = Coefficient::from_poly(Poly::monomial({1, 1, 0, 0}, s.matrix(2)) +
                                  Poly::constant(s.matrix(2)));
  eta.a2 = Coefficient::from_poly(Poly::monomial({0, 2, 0, 0}, s.matrix(2)));
  Connection A = from_eta(eta, EtaKind::Skew);
  Curvature F = curvature(A, CurvatureMethod::Components);
  for (const auto& z : pts()) {
    FormValue v = F.form.eval(z);
    CHECK((v.coef(kM1b2b) + v.coef(kM12).adjoint()).norm() < 1e-12);
    CHECK((v.coef(kM21b) - v.coef(kM12b).adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("ym_residuals: self-consistent current gives zero gap") {
  Sampler s(27);
  Connection A = poly_connection(s, 2);
  CurrentForm J = current(A, Metric::euclidean(), CurrentMethod::ClosedForm);
  YmResiduals r = ym_residuals(A, &J, Metric::euclidean());
  for (const auto& z : pts()) {
    auto [rb, rc] = r.at(z);
    CHECK(rb < 1e-11);
    CHECK(rc < 1e-11);
  }
}
