#include "ymforms/yang_mills.hpp"

namespace ymforms {

namespace {

Coefficient d(const Coefficient& f, Wirtinger w) { return f.derivative(w); }

}  // namespace

Curvature curvature(const Connection& A, CurvatureMethod method) {
  if (method == CurvatureMethod::Generic) {
    FormField a = A.form();
    return Curvature{exterior_d(a) + wedge(a, a)};
  }
  const Coefficient &A1 = A.a(Generator::Dz1), &A2 = A.a(Generator::Dz2),
                    &A1b = A.a(Generator::Dzb1), &A2b = A.a(Generator::Dzb2);
  FormField f(A.n);
  f.set(kM12, d(A2, Wirtinger::D1) - d(A1, Wirtinger::D2) + comm(A1, A2));
  f.set(kM1b2b, d(A2b, Wirtinger::Db1) - d(A1b, Wirtinger::Db2) + comm(A1b, A2b));
  f.set(kM11b, d(A1b, Wirtinger::D1) - d(A1, Wirtinger::Db1) + comm(A1, A1b));
  f.set(kM12b, d(A2b, Wirtinger::D1) - d(A1, Wirtinger::Db2) + comm(A1, A2b));
  f.set(kM21b, d(A1b, Wirtinger::D2) - d(A2, Wirtinger::Db1) + comm(A2, A1b));
  f.set(kM22b, d(A2b, Wirtinger::D2) - d(A2, Wirtinger::Db2) + comm(A2, A2b));
  return Curvature{std::move(f)};
}

FormField covariant_d(const FormField& conn, const FormField& T) {
  int p = T.degree();
  if (p == -2) return FormField(T.dim());  // D_A 0 = 0
  if (p < 0) throw std::invalid_argument("covariant_d: mixed-degree form");
  if (p > 3) throw std::invalid_argument("covariant_d: degree exceeds 3");
  Complex sign = (p % 2 == 0) ? Complex(-1, 0) : Complex(1, 0);
  return exterior_d(T) + wedge(conn, T) + sign * wedge(T, conn);
}

FormField covariant_costar(const Connection& A, const FormField& beta,
                           const Metric& m) {
  Complex sign = m.kind == MetricKind::Euclidean ? Complex(-1, 0) : Complex(1, 0);
  FormField inner = covariant_d(A.minus_adjoint().form(), star(beta, m));
  return sign * star(inner, m);
}

CurrentForm current(const Connection& A, const Metric& m, CurrentMethod method) {
  CurrentForm J;
  J.kind = m.kind;
  if (method == CurrentMethod::Generic) {
    J.form = covariant_costar(A, curvature(A, CurvatureMethod::Components).form, m);
    return J;
  }
  Curvature F = curvature(A, CurvatureMethod::Components);
  const Coefficient F12 = F.f12(), F1b2b = F.f1b2b(), F11b = F.f11b(),
                    F12b = F.f12b(), F21b = F.f21b(), F22b = F.f22b();
  const Coefficient A1s = adjointed(A.a(Generator::Dz1)),
                    A2s = adjointed(A.a(Generator::Dz2)),
                    A1bs = adjointed(A.a(Generator::Dzb1)),
                    A2bs = adjointed(A.a(Generator::Dzb2));
  const Complex two(2, 0);
  FormField f(A.n);
  if (m.kind == MetricKind::Euclidean) {
    f.set(Mask(1 << 0),
          two * (d(F11b, Wirtinger::D1) + d(F12b, Wirtinger::D2) +
                 d(F12, Wirtinger::Db2) - comm(A2s, F12) - comm(A1bs, F11b) -
                 comm(A2bs, F12b)));
    f.set(Mask(1 << 1),
          -two * (Complex(-1, 0) * d(F21b, Wirtinger::D1) -
                  d(F22b, Wirtinger::D2) + d(F12, Wirtinger::Db1) -
                  comm(A1s, F12) + comm(A1bs, F21b) + comm(A2bs, F22b)));
    f.set(Mask(1 << 2),
          two * (d(F1b2b, Wirtinger::D2) - d(F11b, Wirtinger::Db1) -
                 d(F21b, Wirtinger::Db2) + comm(A1s, F11b) + comm(A2s, F21b) -
                 comm(A2bs, F1b2b)));
    f.set(Mask(1 << 3),
          -two * (d(F1b2b, Wirtinger::D1) + d(F12b, Wirtinger::Db1) +
                  d(F22b, Wirtinger::Db2) - comm(A1s, F12b) - comm(A2s, F22b) -
                  comm(A1bs, F1b2b)));
  } else {
    // +★D_{−A*}★F per Cor 3.10; the displayed Minkowski current carries the
    // Euclidean −★ and a duplicated dz̄1 component, both fixed here.
    f.set(Mask(1 << 0),
          two * (Complex(-1, 0) * d(F12b, Wirtinger::D2) +
                 d(F11b, Wirtinger::Db1) - d(F12, Wirtinger::Db2) -
                 comm(A1s, F11b) + comm(A2s, F12) + comm(A2bs, F12b)));
    f.set(Mask(1 << 1),
          two * (d(F21b, Wirtinger::Db1) - d(F22b, Wirtinger::D2) -
                 d(F12, Wirtinger::D1) + comm(A1bs, F12) + comm(A2bs, F22b) -
                 comm(A1s, F21b)));
    f.set(Mask(1 << 2),
          two * (d(F21b, Wirtinger::Db2) - d(F11b, Wirtinger::D1) -
                 d(F1b2b, Wirtinger::D2) + comm(A1bs, F11b) + comm(A2bs, F1b2b) -
                 comm(A2s, F21b)));
    f.set(Mask(1 << 3),
          two * (Complex(-1, 0) * d(F12b, Wirtinger::D1) +
                 d(F22b, Wirtinger::Db2) - d(F1b2b, Wirtinger::Db1) +
                 comm(A1bs, F12b) + comm(A1s, F1b2b) - comm(A2s, F22b)));
  }
  J.form = std::move(f);
  return J;
}

Coefficient lorenz_residual(const Connection& A, const Metric& m) {
  const Coefficient &A1 = A.a(Generator::Dz1), &A2 = A.a(Generator::Dz2),
                    &A1b = A.a(Generator::Dzb1), &A2b = A.a(Generator::Dzb2);
  const Complex mtwo(-2, 0);
  if (m.kind == MetricKind::Euclidean) {
    // eq: D_A*A = −2( Σ_j (∂̄jAj + ∂jAj̄) + Σ_j ([Aj,Aj*] + [Aj̄,Aj̄*]) )
    Coefficient s = d(A1, Wirtinger::Db1) + d(A2, Wirtinger::Db2) +
                    d(A1b, Wirtinger::D1) + d(A2b, Wirtinger::D2) +
                    comm(A1, adjointed(A1)) + comm(A2, adjointed(A2)) +
                    comm(A1b, adjointed(A1b)) + comm(A2b, adjointed(A2b));
    return mtwo * s;
  }
  Coefficient s = d(A1, Wirtinger::D1) - d(A2b, Wirtinger::D2) +
                  d(A1b, Wirtinger::Db1) - d(A2, Wirtinger::Db2) +
                  comm(A1, adjointed(A1b)) - comm(A2, adjointed(A2)) +
                  comm(A1b, adjointed(A1)) - comm(A2b, adjointed(A2b));
  return mtwo * s;
}

Connection gauge_transform(const Connection& A, const GaugeMap& gm) {
  Connection out;
  out.n = A.n;
  Coefficient ginv = inverse_of(gm.g);
  for (int g = 0; g < 4; ++g) {
    Coefficient dg = gm.g.derivative(Wirtinger(g));
    out.comp[g] = mul(mul(ginv, A.comp[g]), gm.g) + mul(ginv, dg);
  }
  return out;
}

double norm_sum(const FormValue& v) {
  double s = 0;
  for (int m = 0; m < 16; ++m)
    if (v.has(Mask(m))) s += v.coef(Mask(m)).norm();
  return s;
}

YmResiduals ym_residuals(const Connection& A, const CurrentForm* J,
                         const Metric& m) {
  Curvature F = curvature(A, CurvatureMethod::Components);
  YmResiduals r;
  r.bianchi = covariant_d(A, F.form);
  r.current_gap = covariant_costar(A, F.form, m);
  if (J) r.current_gap = r.current_gap - J->form;
  return r;
}

std::pair<double, double> YmResiduals::at(const Point& z) const {
  return {norm_sum(bianchi.eval(z)), norm_sum(current_gap.eval(z))};
}

}  // namespace ymforms
