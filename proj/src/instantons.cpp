#include "ymforms/instantons.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "ymforms/sampling.hpp"

namespace ymforms {

namespace {

Poly promote_scalar(const Poly& scalar, int n) {
  Poly out(n);
  for (const auto& t : scalar.terms())
    out = out + Poly::radial(t.rad, t.pw, t.m(0, 0) * identity(n));
  return out;
}

void require_holomorphic_poly(const Poly& p, const char* what) {
  if (!p.is_polynomial())
    throw std::invalid_argument(std::string(what) + ": not a polynomial");
  for (const auto& t : p.terms())
    if (t.pw[2] != 0 || t.pw[3] != 0)
      throw std::invalid_argument(std::string(what) + ": not holomorphic");
}

// e^{X} S with X, S polynomial and the values of X, its derivatives and S all
// commuting; closed under Wirtinger derivatives, which keeps gauge transforms
// of exp-type maps exact.
struct ExpTimesPolyImpl final : Coefficient::Impl {
  Poly X, S;
  ExpTimesPolyImpl(Poly x, Poly s) : X(std::move(x)), S(std::move(s)) {}
  CMatrix eval(const Point& z) const override {
    return X.eval(z).exp() * S.eval(z);
  }
  int dim() const override { return X.dim(); }
  DerivStrategy strategy() const override { return DerivStrategy::ClosedForm; }
  Coefficient derivative(Wirtinger w, const Coefficient&) const override {
    return Coefficient(std::make_shared<ExpTimesPolyImpl>(
        X, X.wirtinger(w) * S + S.wirtinger(w)));
  }
};

Coefficient exp_of_poly(const Poly& X) {
  return Coefficient(std::make_shared<ExpTimesPolyImpl>(
      X, Poly::constant(identity(X.dim()))));
}

// coefficient restricted to the slice z1 = w1
struct RestrictZ1Impl final : Coefficient::Impl {
  Coefficient base;
  Complex w1;
  RestrictZ1Impl(Coefficient b, Complex w) : base(std::move(b)), w1(w) {}
  CMatrix eval(const Point& z) const override {
    return base.eval(Point{w1, z.z2});
  }
  int dim() const override { return base.dim(); }
  DerivStrategy strategy() const override { return base.strategy(); }
  Coefficient derivative(Wirtinger w, const Coefficient&) const override {
    if (w == Wirtinger::D1 || w == Wirtinger::Db1) return {};
    Coefficient d = base.derivative(w);
    if (d.is_zero()) return {};
    return Coefficient(std::make_shared<RestrictZ1Impl>(std::move(d), w1));
  }
};

Coefficient restrict_z1(const Coefficient& f, Complex w1) {
  if (f.is_zero()) return {};
  return Coefficient(std::make_shared<RestrictZ1Impl>(f, w1));
}

}  // namespace

Connection from_eta(const EtaForm& eta, EtaKind kind) {
  Complex s = kind == EtaKind::Skew ? Complex(-1, 0) : Complex(1, 0);
  Connection A;
  A.n = eta.n;
  A.comp[int(Generator::Dz1)] = eta.a1;
  A.comp[int(Generator::Dz2)] = eta.a2;
  A.comp[int(Generator::Dzb1)] = s * adjointed(eta.a1);
  A.comp[int(Generator::Dzb2)] = s * adjointed(eta.a2);
  return A;
}

EtaFlagDefects verify_eta_flags(const EtaForm& eta, const std::vector<Point>& pts) {
  EtaFlagDefects d;
  for (const auto& z : pts) {
    for (Wirtinger w : {Wirtinger::Db1, Wirtinger::Db2}) {
      d.holomorphic = std::max(d.holomorphic, wirtinger(eta.a1, z, w).norm());
      d.holomorphic = std::max(d.holomorphic, wirtinger(eta.a2, z, w).norm());
    }
    for (const Coefficient* c : {&eta.a1, &eta.a2}) {
      CMatrix v = c->eval(z, eta.n);
      d.normal = std::max(d.normal, commutator(v, v.adjoint()).norm());
    }
  }
  return d;
}

MaurerCartanResidual maurer_cartan_residual(const FormField& a) {
  MaurerCartanResidual r;
  r.total = exterior_d(a) + wedge(a, a);
  r.dbar_part = exterior_d(a, DPart::Delbar);
  const Coefficient &a1 = a.coef(Mask(1 << 0)), &a2 = a.coef(Mask(1 << 1));
  r.ff12 = a2.derivative(Wirtinger::D1) - a1.derivative(Wirtinger::D2) +
           comm(a1, a2);
  return r;
}

DualityConditionResult duality_residual_thm511(const EtaForm& eta, const Metric& m,
                                               DualityTarget target) {
  if (!eta.holomorphic || !eta.normal)
    throw std::invalid_argument(
        "duality_residual_thm511: eta must be flagged holomorphic and normal");
  const Complex i(0, 1);
  const Coefficient &a1 = eta.a1, &a2 = eta.a2;
  Coefficient d12 = a2.derivative(Wirtinger::D1) - a1.derivative(Wirtinger::D2);
  Coefficient c12s = comm(a1, adjointed(a2));   // [A1, A2*]
  Coefficient c21s = comm(a2, adjointed(a1));   // [A2, A1*]

  DualityConditionResult out;
  out.n = eta.n;
  FormField f(eta.n);
  if (m.kind == MetricKind::Euclidean) {
    if (target == DualityTarget::SD) {
      // SD iff A1(z), A2(z) commute; F = (∂1A2−∂2A1)dz1∧dz2 − (..)* dz̄1∧dz̄2
      out.residual = comm(a1, a2);
      f.set(kM12, d12);
      f.set(kM1b2b, Complex(-1, 0) * adjointed(d12));
    } else {
      // ASD iff F12 = 0; F = −[A1,A2*]dz1∧dz̄2 − [A2,A1*]dz2∧dz̄1
      out.residual = d12 + comm(a1, a2);
      f.set(kM12b, Complex(-1, 0) * c12s);
      f.set(kM21b, Complex(-1, 0) * c21s);
    }
  } else {
    Complex ti = target == DualityTarget::SD ? i : -i;
    // [A1* ∓ iA1, A2] = ±i(∂1A2 − ∂2A1)
    out.residual =
        comm(adjointed(a1) - ti * a1, a2) - ti * d12;
    // F = ω − ω*, ω = ±[A2, A1*](i dz1∧dz2 ∓ dz2∧dz̄1)
    Complex s = target == DualityTarget::SD ? Complex(1, 0) : Complex(-1, 0);
    f.set(kM12, (s * i) * c21s);
    f.set(kM21b, Complex(-1, 0) * c21s);
    f.set(kM1b2b, (s * i) * c12s);
    f.set(kM12b, Complex(-1, 0) * c12s);
  }
  out.predicted = Curvature{std::move(f)};
  out.generic = curvature(from_eta(eta, EtaKind::Skew), CurvatureMethod::Generic);
  return out;
}

std::pair<Connection, ConstantReport> build_constant(const CMatrix& A1,
                                                     const CMatrix& A2,
                                                     const Metric& m) {
  const Complex i(0, 1);
  EtaForm eta;
  eta.n = int(A1.rows());
  eta.a1 = Coefficient::constant(A1);
  eta.a2 = Coefficient::constant(A2);
  eta.holomorphic = true;
  eta.normal = is_normal(A1) && is_normal(A2);
  Connection A = from_eta(eta, EtaKind::Skew);

  ConstantReport r;
  CMatrix n1 = commutator(A1, A1.adjoint()), n2 = commutator(A2, A2.adjoint());
  r.normal1 = is_normal(A1);
  r.normal2 = is_normal(A2);
  r.euclid_sd = commutator(A1, A2.adjoint()).norm() + (n1 - n2).norm();
  r.euclid_asd = commutator(A1, A2).norm() + (n1 + n2).norm();
  r.mink_sd = n1.norm() + n2.norm() +
              commutator((A1.adjoint() - i * A1).eval(), A2).norm();
  r.mink_asd = n1.norm() + n2.norm() +
               commutator((A1.adjoint() + i * A1).eval(), A2).norm();

  FormValue F = curvature(A, CurvatureMethod::Components).form.eval(Point{});
  r.strict_class = classify_duality(F, m, 1e-10);
  if (m.kind == MetricKind::Euclidean) {
    bool sd = r.euclid_sd <= r.euclid_asd;
    r.component_identity_defect =
        sd ? F.coef(kM12b).norm() + F.coef(kM21b).norm() +
                 (F.coef(kM11b) - F.coef(kM22b)).norm()
           : F.coef(kM12).norm() + F.coef(kM1b2b).norm() +
                 (F.coef(kM11b) + F.coef(kM22b)).norm();
  } else {
    Complex lam = r.mink_sd <= r.mink_asd ? i : -i;
    r.component_identity_defect =
        (F.coef(kM21b) - lam * F.coef(kM12)).norm() +
        (F.coef(kM22b) - lam * F.coef(kM11b)).norm();
  }
  return {std::move(A), r};
}

Example63 build_example_6_3(const Poly& h_scalar) {
  if (h_scalar.dim() != 1)
    throw std::invalid_argument("build_example_6_3: h must be scalar");
  require_holomorphic_poly(h_scalar, "build_example_6_3: h");
  const Complex i(0, 1);
  const int n = 2;

  CMatrix U(2, 2);
  U << 1, 1, i, -i;
  U /= std::sqrt(2.0);
  CMatrix shift(2, 2);
  shift << 0, 0, 0, Complex(1, -1);

  Poly h2 = promote_scalar(h_scalar, n);
  Poly H2 = promote_scalar(h_scalar.wirtinger(Wirtinger::D2).antiderivative(0), n);

  Example63 out;
  out.eta.n = n;
  out.eta.holomorphic = true;
  out.eta.normal = true;
  out.eta.a1 = Coefficient::from_poly(h2 + Poly::constant(shift));

  auto diag_part = [U](Complex z2, bool derivative) {
    CMatrix D(2, 2);
    D.setZero();
    if (!derivative) {
      D(0, 0) = std::cos(z2);
      D(1, 1) = Complex(0, 1) * std::sin(z2);
    } else {
      D(0, 0) = -std::sin(z2);
      D(1, 1) = Complex(0, 1) * std::cos(z2);
    }
    return (U.adjoint() * D * U).eval();
  };
  std::array<Coefficient, 4> trig_derivs;
  trig_derivs[int(Wirtinger::D2)] = Coefficient::fn(
      n, [diag_part](const Point& z) { return diag_part(z.z2, true); });
  Coefficient trig = Coefficient::fn(
      n, [diag_part](const Point& z) { return diag_part(z.z2, false); },
      trig_derivs);
  out.eta.a2 = Coefficient::from_poly(H2) + trig;
  out.A = from_eta(out.eta, EtaKind::Skew);
  return out;
}

std::pair<Connection, DiracReport> build_dirac_monopole(const CMatrix& B1,
                                                        const CMatrix& B2) {
  const int n = int(B1.rows());
  if (B2.rows() != n)
    throw std::invalid_argument("build_dirac_monopole: dimension mismatch");
  EtaForm eta;
  eta.n = n;
  eta.a1 = Coefficient::from_poly(Poly::monomial({0, 0, 1, 0}, B1));
  eta.a2 = Coefficient::from_poly(Poly::monomial({0, 0, 0, 1}, B2));
  eta.holomorphic = false;
  eta.normal = is_normal(B1) && is_normal(B2);
  Connection A = from_eta(eta, EtaKind::Skew);

  DiracReport r;
  r.normal1 = is_normal(B1);
  r.normal2 = is_normal(B2);
  CMatrix s1 = B1 + B1.adjoint(), s2 = B2 + B2.adjoint();
  r.cond_a = (s1 - s2).norm();
  r.cond_b = (s1 + s2).norm();
  Point sample = Point::from_x(0.7, 0.2, -0.4, 0.9);
  FormValue F = curvature(A, CurvatureMethod::Components).form.eval(sample);
  r.strict_class = classify_duality(F, Metric::euclidean(), 1e-10);
  r.curvature_nonzero = F.norm() > 1e-12;
  return {std::move(A), r};
}

BPSTBundle build_bpst(const BPSTParams& params) {
  if (!(params.mu > 0)) throw std::invalid_argument("build_bpst: mu must be > 0");
  const Complex i(0, 1);
  const double mu = params.mu;
  CMatrix s1 = pauli(1), s2 = pauli(2), s3 = pauli(3);

  // η = (z̄1 dz1 − z̄2 dz2)σ1 − i(z̄2 dz1 − z̄1 dz2)σ2 + (z̄2 dz1 + z̄1 dz2)σ3
  Poly eta1 = Poly::monomial({0, 0, 1, 0}, s1) +
              Poly::monomial({0, 0, 0, 1}, (-i * s2 + s3).eval());
  Poly eta2 = Poly::monomial({0, 0, 0, 1}, (-1.0 * s1).eval()) +
              Poly::monomial({0, 0, 1, 0}, (i * s2 + s3).eval());

  BPSTBundle out;
  out.mu = mu;
  out.eta.n = 2;
  out.eta.a1 = Coefficient::from_poly(eta1);
  out.eta.a2 = Coefficient::from_poly(eta2);
  out.eta.holomorphic = false;
  out.eta.normal = false;

  // f/(2|z|^2) = 1/(2(r+μ)); γ^{-1}dγ = −(η−η*)/(2r)
  RationalR s_conn{{1}, {2 * mu, 2}};
  RationalR half_r{{1}, {0, 2}};
  auto radial_times = [](const RationalR& rad, const Poly& p) {
    return Poly::radial(rad, {0, 0, 0, 0}, identity(p.dim())) * p;
  };
  Connection A;
  A.n = 2;
  A.comp[0] = Coefficient::from_poly(Complex(-1, 0) * radial_times(s_conn, eta1));
  A.comp[1] = Coefficient::from_poly(Complex(-1, 0) * radial_times(s_conn, eta2));
  A.comp[2] = Coefficient::from_poly(radial_times(s_conn, eta1.adjointed()));
  A.comp[3] = Coefficient::from_poly(radial_times(s_conn, eta2.adjointed()));
  out.A = std::move(A);

  FormField mc(2);
  mc.set(Mask(1 << 0), Coefficient::from_poly(Complex(-1, 0) * radial_times(half_r, eta1)));
  mc.set(Mask(1 << 1), Coefficient::from_poly(Complex(-1, 0) * radial_times(half_r, eta2)));
  mc.set(Mask(1 << 2), Coefficient::from_poly(radial_times(half_r, eta1.adjointed())));
  mc.set(Mask(1 << 3), Coefficient::from_poly(radial_times(half_r, eta2.adjointed())));
  out.gamma_mc = std::move(mc);

  // γ(x) = (x0 − i Σ xj σj)/|x|
  auto gamma_fn = [s1, s2, s3](const Point& z) {
    double r = z.r2();
    if (r <= 0) throw std::domain_error("bpst: gamma undefined at the origin");
    CMatrix m = z.x0() * identity(2) -
                Complex(0, 1) * (z.x1() * s1 + z.x2() * s2 + z.x3() * s3);
    return (m / std::sqrt(r)).eval();
  };
  std::array<Coefficient, 4> gderivs;
  for (int w = 0; w < 4; ++w) {
    gderivs[w] = Coefficient::fn(2, [s1, s2, s3, w](const Point& z) {
      double r = z.r2();
      if (r <= 0) throw std::domain_error("bpst: gamma undefined at the origin");
      const Complex i(0, 1);
      std::array<CMatrix, 4> mk = {identity(2), (-i * s1).eval(), (-i * s2).eval(),
                                   (-i * s3).eval()};
      CMatrix m = z.x0() * identity(2) -
                  i * (z.x1() * s1 + z.x2() * s2 + z.x3() * s3);
      auto real_partial = [&](int sidx) {
        return (mk[sidx] / std::sqrt(r) - m * (z.x(sidx) / std::pow(r, 1.5))).eval();
      };
      const int k = w % 2;
      const Complex fac = (w < 2) ? Complex(0, -0.5) : Complex(0, 0.5);
      return (0.5 * real_partial(2 * k) + fac * real_partial(2 * k + 1)).eval();
    });
  }
  out.gamma = Coefficient::fn(2, gamma_fn, gderivs);

  out.f = [mu](double r) { return r / (r + mu); };
  out.p = [mu](double r) { return mu / ((r + mu) * (r + mu)); };
  return out;
}

double profile_ode_residual(const RadialProfile& f, double r) {
  // λ df − (f²−f) dλ with λ = 1/(2r): f'/(2r) + (f²−f)/(2r²)
  double fr = f.f(r), dfr = f.df(r);
  return std::abs(dfr / (2 * r) + (fr * fr - fr) / (2 * r * r));
}

std::vector<double> profile_ode_residual(const RadialProfile& f,
                                         const std::vector<double>& radii) {
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(profile_ode_residual(f, r));
  return out;
}

GaugeNormalizeResult gauge_normalize(const EtaForm& eta, const Point& w,
                                     double tol) {
  if (!eta.holomorphic)
    throw std::invalid_argument("gauge_normalize: eta must be holomorphic");
  const Complex i(0, 1);
  const int n = eta.n;
  Sampler sampler(20240901);
  std::vector<Point> pts = sampler.points(8, 1.5);
  pts.push_back(w);

  CMatrix a1w = eta.a1.eval(w, n);
  CMatrix b1 = 0.5 * (a1w - i * a1w.adjoint());  // B1 = (A1 − iA1*)/2
  CMatrix b2 = 0.5 * (a1w + i * a1w.adjoint());

  std::vector<CMatrix> samples;
  for (const auto& z : pts) {
    samples.push_back(eta.a1.eval(z, n));
    samples.push_back(eta.a2.eval(z, n));
  }
  auto commutes_with_all = [&](const CMatrix& x) {
    for (const auto& s : samples)
      if (commutator(x, s).norm() > tol * std::max(1.0, x.norm() * s.norm()))
        return false;
    return true;
  };
  bool family_commutes = true;
  for (size_t a = 0; a < samples.size() && family_commutes; ++a)
    for (size_t b = a + 1; b < samples.size(); ++b)
      if (commutator(samples[a], samples[b]).norm() >
          tol * std::max(1.0, samples[a].norm() * samples[b].norm())) {
        family_commutes = false;
        break;
      }
  double closed_defect = 0;
  for (const auto& z : pts)
    closed_defect = std::max(
        closed_defect, (wirtinger(eta.a1, z, Wirtinger::D2) -
                        wirtinger(eta.a2, z, Wirtinger::D1))
                           .norm());

  GaugeNormalizeResult out;
  out.full_subtraction = family_commutes && closed_defect <= tol;

  const Poly* a1p = eta.a1.poly();
  if (!a1p)
    throw std::invalid_argument("gauge_normalize: A1 must be polynomial");

  CMatrix kept;
  Coefficient a2_slice;  // A2(w1, ·)
  Poly htilde(n);
  if (out.full_subtraction) {
    kept = CMatrix::Zero(n, n);
    const Poly* a2p = eta.a2.poly();
    if (!a2p)
      throw std::invalid_argument(
          "gauge_normalize: closed commuting case needs polynomial A2");
    Poly q1 = a1p->antiderivative(0);
    Poly q2 = a2p->substitute(0, w.z1).antiderivative(1);
    htilde = q1 - q1.substitute(0, w.z1) + q2 - q2.substitute(1, w.z2);
    a2_slice = Coefficient();  // normal form is 0
  } else {
    // keep the non-commutant half of A1(w)
    if (commutes_with_all(b2))
      kept = b1;
    else if (commutes_with_all(b1))
      kept = b2;
    else
      throw std::invalid_argument(
          "gauge_normalize: neither half of A1(w) lies in the commutant");
    Poly a1t = *a1p - Poly::constant(kept);
    // exactness of η̃: ∂2 Ã1 = ∂1 Ã2
    double exact = 0;
    Coefficient a1t_c = Coefficient::from_poly(a1t);
    Coefficient a2t = eta.a2 - restrict_z1(eta.a2, w.z1);
    for (const auto& z : pts)
      exact = std::max(exact, (a1t_c.derivative(Wirtinger::D2).eval(z, n) -
                               a2t.derivative(Wirtinger::D1).eval(z, n))
                                  .norm());
    out.exactness_defect = exact;
    if (exact > tol)
      throw std::invalid_argument("gauge_normalize: eta-tilde is not exact");
    Poly q1 = a1t.antiderivative(0);
    htilde = q1 - q1.substitute(0, w.z1);
    a2_slice = restrict_z1(eta.a2, w.z1);
  }

  Poly X = Complex(-1, 0) * htilde + htilde.adjointed();
  // the gauge exponent must have commuting values for dg = g dX
  for (const auto& za : pts)
    for (const auto& zb : pts)
      if (commutator(X.eval(za), X.eval(zb)).norm() > 1e-8)
        throw std::invalid_argument(
            "gauge_normalize: gauge exponent values do not commute");
  GaugeMap g{exp_of_poly(X), true};

  double unit = 0;
  for (const auto& z : pts) {
    CMatrix gv = g.g.eval(z, n);
    unit = std::max(unit, (gv.adjoint() * gv - identity(n)).norm());
  }
  out.unitarity_defect = unit;

  out.g = g;
  out.kept_a1 = kept;
  out.normalized = gauge_transform(from_eta(eta, EtaKind::Skew), g);
  EtaForm etap;
  etap.n = n;
  etap.holomorphic = true;
  etap.normal = eta.normal;
  if (kept.norm() > 0) etap.a1 = Coefficient::constant(kept);
  etap.a2 = a2_slice;
  out.normal_form = from_eta(etap, EtaKind::Skew);
  return out;
}

}  // namespace ymforms
