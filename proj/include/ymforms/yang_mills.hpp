#pragma once

#include "ymforms/hodge.hpp"

namespace ymforms {

// Masks of the six curvature components.
inline constexpr Mask kM12 = 0b0011;
inline constexpr Mask kM1b2b = 0b1100;
inline constexpr Mask kM11b = 0b0101;
inline constexpr Mask kM21b = 0b0110;
inline constexpr Mask kM12b = 0b1001;
inline constexpr Mask kM22b = 0b1010;

// A = A1 dz1 + A2 dz2 + A1̄ dz̄1 + A2̄ dz̄2
struct Connection {
  int n = 1;
  std::array<Coefficient, 4> comp;  // indexed by Generator

  const Coefficient& a(Generator g) const { return comp[int(g)]; }
  Coefficient& a(Generator g) { return comp[int(g)]; }

  FormField form() const {
    FormField f(n);
    for (int g = 0; g < 4; ++g)
      if (!comp[g].is_zero()) f.set(Mask(1 << g), comp[g]);
    return f;
  }
  static Connection from_form(const FormField& f) {
    Connection A;
    A.n = f.dim();
    for (int g = 0; g < 4; ++g) A.comp[g] = f.coef(Mask(1 << g));
    return A;
  }
  // -A* as a connection: (−A*)_g = −(A_{ḡ})*
  Connection minus_adjoint() const {
    Connection B;
    B.n = n;
    for (int g = 0; g < 4; ++g)
      B.comp[g] = Complex(-1, 0) * adjointed(comp[(g + 2) % 4]);
    return B;
  }
};

struct Curvature {
  FormField form;  // degree 2

  const Coefficient& f12() const { return form.coef(kM12); }
  const Coefficient& f1b2b() const { return form.coef(kM1b2b); }
  const Coefficient& f11b() const { return form.coef(kM11b); }
  const Coefficient& f12b() const { return form.coef(kM12b); }
  const Coefficient& f21b() const { return form.coef(kM21b); }
  const Coefficient& f22b() const { return form.coef(kM22b); }
};

enum class CurvatureMethod { Components, Generic };

// F_A = dA + A∧A; the components method evaluates the displayed formulas
// F12 = ∂1A2 − ∂2A1 + [A1,A2] etc., the generic one goes through the forms.
Curvature curvature(const Connection& A, CurvatureMethod method);

// D_A T = dT + A∧T − (−1)^p T∧A for a pure-degree T.
FormField covariant_d(const FormField& conn_1form, const FormField& T);
inline FormField covariant_d(const Connection& A, const FormField& T) {
  return covariant_d(A.form(), T);
}

// D_A* = −★ D_{−A*} ★ (Euclidean), +★ D_{−A*} ★ (Minkowski).
FormField covariant_costar(const Connection& A, const FormField& beta,
                           const Metric& m);

struct CurrentForm {
  MetricKind kind = MetricKind::Euclidean;
  FormField form;  // degree 1

  const Coefficient& j(Generator g) const { return form.coef(Mask(1 << int(g))); }
};

enum class CurrentMethod { ClosedForm, Generic };

// J = D_A* F_A. The closed form evaluates the per-metric component formulas
// and is cross-checked against the generic composition in the tests.
CurrentForm current(const Connection& A, const Metric& m, CurrentMethod method);

// Closed form of D_A*A; the zero function iff A is in quantized Lorenz gauge.
Coefficient lorenz_residual(const Connection& A, const Metric& m);

struct GaugeMap {
  Coefficient g;
  bool unitary = false;
};

// A_g = g^{-1} A g + g^{-1} dg
Connection gauge_transform(const Connection& A, const GaugeMap& gm);

// Residuals of D_A F_A = 0 and D_A* F_A = J, as pointwise sums of Frobenius
// norms over the coefficient matrices.
struct YmResiduals {
  FormField bianchi;      // D_A F_A
  FormField current_gap;  // D_A* F_A − J

  std::pair<double, double> at(const Point& z) const;
};

YmResiduals ym_residuals(const Connection& A, const CurrentForm* J, const Metric& m);

double norm_sum(const FormValue& v);

}  // namespace ymforms
