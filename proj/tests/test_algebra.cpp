#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

using namespace ymforms;
using namespace ymtest;

TEST_CASE("commutator on the Pauli algebra") {
  const Complex i(0, 1);
  // [s1, s2] = 2i s3
  CHECK((commutator(pauli(1), pauli(2)) - 2.0 * i * pauli(3)).norm() == 0.0);
  CMatrix a = Sampler(1).matrix(3);
  CHECK(commutator(a, a).norm() == 0.0);
  CHECK_THROWS_AS(commutator(pauli(1), CMatrix::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("commutator: the monopole matrix B1 is normal (B1 B1* = 2I)") {
  const Complex i(0, 1);
  CMatrix B1(2, 2);
  B1 << -1, 1, -i, -i;
  CHECK((B1 * B1.adjoint() - 2.0 * identity(2)).norm() < 1e-14);
  CHECK(commutator(B1, B1.adjoint()).norm() < 1e-14);
}

TEST_CASE("trace: matrix vs state normalization") {
  CMatrix m = 3.0 * identity(2);
  CHECK(approx(trace(m, TraceKind::Matrix), Complex(6, 0)));
  CHECK(approx(trace(m, TraceKind::State), Complex(3, 0)));
  // cyclicity on random pairs
  Sampler s(2);
  for (int k = 0; k < 20; ++k) {
    CMatrix a = s.matrix(3), b = s.matrix(3);
    CHECK(std::abs(trace((a * b).eval()) - trace((b * a).eval())) <=
          1e-12 * a.norm() * b.norm());
  }
}

TEST_CASE("inner product <a,b> = Tr(a b*)") {
  CHECK(approx(inner(pauli(1), pauli(1)), Complex(2, 0)));
  CHECK(inner(CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)) == Complex(0, 0));
  // s1 s2* = -i s3 is traceless (direct 2x2 evaluation)
  CHECK(std::abs(inner(pauli(1), pauli(2))) < 1e-15);

  Sampler s(3);
  for (int k = 0; k < 10; ++k) {
    CMatrix a = s.matrix(2), b = s.matrix(2), c = s.matrix(2);
    Complex l = s.uniform(-2, 2);
    CHECK(approx(inner((l * a + c).eval(), b), l * inner(a, b) + inner(c, b)));
    CHECK(approx(inner(a, (l * b).eval()), std::conj(l) * inner(a, b)));
    CHECK(approx(inner(a, b), std::conj(inner(b, a))));
    CHECK(inner(a, a).real() > 0);
  }
}

TEST_CASE("is_normal") {
  Sampler s(4);
  CHECK(is_normal(s.unitary(3)));
  CMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  CHECK_FALSE(is_normal(nil));
  const Complex i(0, 1);
  CMatrix B2(2, 2);
  B2 << 1, -i, -1, -i;
  CHECK(is_normal(B2));
}

TEST_CASE("Fuglede property for exactly commuting pairs") {
  Sampler s(5);
  for (int k = 0; k < 10; ++k) {
    CMatrix u = s.unitary(3);
    CMatrix d1 = CMatrix::Zero(3, 3), d2 = CMatrix::Zero(3, 3);
    for (int j = 0; j < 3; ++j) {
      d1(j, j) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
      d2(j, j) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
    }
    CMatrix a = u * d1 * u.adjoint();  // normal, shares eigenbasis with b
    CMatrix b = u * d2 * u.adjoint();
    CHECK(commutator(a, b).norm() < 1e-12);
    CHECK(commutator(a.adjoint().eval(), b).norm() < 1e-12);
  }
}
