#include "ymforms/variational.hpp"

namespace ymforms {

FieldPair extract_eb(const FormValue& f) {
  const Complex i(0, 1);
  const CMatrix F12 = f.coef(kM12), F1b2b = f.coef(kM1b2b), F11b = f.coef(kM11b),
                F12b = f.coef(kM12b), F21b = f.coef(kM21b), F22b = f.coef(kM22b);
  FieldPair fp;
  fp.E[0] = 2.0 * i * F11b;
  fp.E[1] = -(F12 + F1b2b + F12b - F21b);
  fp.E[2] = -i * (F12 - F1b2b - F12b - F21b);
  fp.B[0] = 2.0 * i * F22b;
  fp.B[1] = -(F12 + F1b2b - F12b + F21b);
  fp.B[2] = -i * (F12 - F1b2b + F12b + F21b);
  return fp;
}

FormValue eb_to_curvature(const FieldPair& fp) {
  const Complex i(0, 1);
  const int n = int(fp.E[0].rows());
  CMatrix e2b2 = fp.E[1] + fp.B[1], e3b3 = fp.E[2] + fp.B[2];
  CMatrix e2m = fp.E[1] - fp.B[1], e3m = fp.E[2] - fp.B[2];
  FormValue f(n);
  f.set(kM11b, (fp.E[0] / (2.0 * i)).eval());
  f.set(kM22b, (fp.B[0] / (2.0 * i)).eval());
  f.set(kM12, (0.25 * (-e2b2 + i * e3b3)).eval());
  f.set(kM1b2b, (0.25 * (-e2b2 - i * e3b3)).eval());
  f.set(kM21b, (0.25 * (e2m - i * e3m)).eval());
  f.set(kM12b, (0.25 * (-e2m - i * e3m)).eval());
  return f;
}

Complex eb_inner(const FieldPair& fp, TraceKind kind) {
  CMatrix s = fp.E[0] * fp.B[0].adjoint() + fp.E[1] * fp.B[1].adjoint() +
              fp.E[2] * fp.B[2].adjoint();
  return trace(s, kind);
}

std::pair<bool, bool> hermitian_field_check(const FieldPair& fp, double tol) {
  auto herm = [tol](const std::array<CMatrix, 3>& t) {
    for (const auto& m : t)
      if ((m - m.adjoint()).norm() > tol * std::max(1.0, m.norm())) return false;
    return true;
  };
  return {herm(fp.E), herm(fp.B)};
}

namespace {

Complex lagrangian_value(const FormValue& Av, const FormValue& Fv,
                         const FormValue* Jv, const Metric& m, TraceKind kind) {
  FormValue top = Complex(0.5, 0) * wedge(Fv, star(adjoint_form(Fv), m));
  if (Jv)
    top = top - wedge(Av, star(adjoint_form(*Jv), m));
  return trace(top.coef(Mask(0b1111)), kind) / star_table(m).vol_coeff();
}

}  // namespace

Complex lagrangian(const Connection& A, const CurrentForm* J, const Metric& m,
                   const Point& z, TraceKind kind) {
  FormValue Av = A.form().eval(z);
  FormValue Fv = curvature(A, CurvatureMethod::Components).form.eval(z);
  if (J) {
    FormValue Jv = J->form.eval(z);
    return lagrangian_value(Av, Fv, &Jv, m, kind);
  }
  return lagrangian_value(Av, Fv, nullptr, m, kind);
}

FunctionalResult functional(const Connection& A, const CurrentForm* J,
                            const Metric& m, const QuadratureSpec& quad,
                            TraceKind kind) {
  FormField Aform = A.form();
  FormField Fform = curvature(A, CurvatureMethod::Components).form;
  FunctionalResult out;
  out.curvature_part =
      Complex(0.5, 0) * global_inner(Fform, Fform, m, quad, kind);
  out.source_part = J ? -global_inner(Aform, J->form, m, quad, kind) : Complex(0, 0);
  out.total = integrate(quad, [&](const Point& z) {
    FormValue Av = Aform.eval(z), Fv = Fform.eval(z);
    if (J) {
      FormValue Jv = J->form.eval(z);
      return lagrangian_value(Av, Fv, &Jv, m, kind);
    }
    return lagrangian_value(Av, Fv, nullptr, m, kind);
  });
  if (std::abs(out.total) > 1e12)
    throw std::domain_error("functional: diverging value");
  return out;
}

namespace {

Connection axpy(const Connection& A, double t, const Connection& B) {
  Connection out;
  out.n = A.n;
  for (int g = 0; g < 4; ++g)
    out.comp[g] = A.comp[g] + Complex(t, 0) * B.comp[g];
  return out;
}

}  // namespace

DirectionalDerivative directional_derivative(const Connection& A,
                                             const Connection& B,
                                             const CurrentForm* J, const Metric& m,
                                             const QuadratureSpec& quad,
                                             TraceKind kind, double t) {
  auto H = [&](double s) {
    return functional(axpy(A, s, B), J, m, quad, kind).total;
  };
  auto central = [&](double s) { return (H(s) - H(-s)) / (2 * s); };
  Complex d1 = central(t), d2 = central(t / 2);
  DirectionalDerivative out;
  out.finite_difference = (4.0 * d2 - d1) / 3.0;
  FormField resid =
      covariant_costar(A, curvature(A, CurvatureMethod::Components).form, m);
  if (J) resid = resid - J->form;
  out.inner_product = global_inner(B.form(), resid, m, quad, kind);
  out.gap = std::abs(out.finite_difference - out.inner_product);
  return out;
}

// ---- radial profiles ----

namespace {

// Fritsch–Carlson monotone cubic slopes
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const int n = int(x.size());
  std::vector<double> d(n - 1), m(n);
  for (int i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (int i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0)
      m[i] = 0;
    else {
      double w1 = 2 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      double w2 = (x[i + 1] - x[i]) + 2 * (x[i] - x[i - 1]);
      m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (d[i] == 0) {
      m[i] = m[i + 1] = 0;
      continue;
    }
    double a = m[i] / d[i], b = m[i + 1] / d[i];
    double s = a * a + b * b;
    if (s > 9) {
      double tau = 3 / std::sqrt(s);
      m[i] = tau * a * d[i];
      m[i + 1] = tau * b * d[i];
    }
  }
  return m;
}

struct Pchip {
  std::vector<double> x, y, m;

  double eval(double t, double* deriv) const {
    const int n = int(x.size());
    if (t <= x.front()) {
      if (deriv) *deriv = 0;
      return y.front();
    }
    if (t >= x.back()) {
      if (deriv) *deriv = 0;
      return y.back();
    }
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      int mid = (lo + hi) / 2;
      (x[mid] <= t ? lo : hi) = mid;
    }
    double h = x[lo + 1] - x[lo], s = (t - x[lo]) / h;
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    if (deriv)
      *deriv = y[lo] * (6 * s * (s - 1) / h) + m[lo] * (3 * s * s - 4 * s + 1) +
               y[lo + 1] * (-6 * s * (s - 1) / h) + m[lo + 1] * (3 * s * s - 2 * s);
    return y[lo] * h00 + m[lo] * h10 * h + y[lo + 1] * h01 + m[lo + 1] * h11 * h;
  }
};

}  // namespace

void ProfileParam::clamp() {
  for (auto& v : values) v = std::min(1.0, std::max(0.0, v));
  if (!values.empty()) values.front() = 0;
}

RadialProfile ProfileParam::profile() const {
  if (radii.size() != values.size() || radii.size() < 2)
    throw std::invalid_argument("profile: need matching radii/values, K >= 1");
  const double mu = mu_hint;
  auto u_of = [mu](double r) { return r / (r + mu); };
  Pchip spline;
  for (size_t i = 0; i < radii.size(); ++i) {
    spline.x.push_back(u_of(radii[i]));
    spline.y.push_back(std::min(1.0, std::max(0.0, values[i])));
  }
  spline.y.front() = 0;
  spline.m = pchip_slopes(spline.x, spline.y);
  RadialProfile out;
  out.f = [spline, u_of](double r) { return spline.eval(u_of(r), nullptr); };
  out.df = [spline, u_of, mu](double r) {
    double du = 0;
    spline.eval(u_of(r), &du);
    double dudr = mu / ((r + mu) * (r + mu));
    return du * dudr;
  };
  return out;
}

ProfileParam ProfileParam::bpst_knots(double mu, int interior_knots) {
  ProfileParam p;
  p.mu_hint = mu;
  // knots equally spaced in u = r/(r+mu), plus a far knot pinning f -> 1
  const int k = interior_knots;
  p.radii.push_back(0);
  for (int i = 1; i <= k; ++i) {
    double u = double(i) / (k + 1);
    p.radii.push_back(mu * u / (1 - u));
  }
  p.radii.push_back(mu * 0.999 / 0.001);  // u = 0.999
  for (double r : p.radii) p.values.push_back(r / (r + mu));
  return p;
}

Connection profile_connection(const RadialProfile& f) {
  const Complex i(0, 1);
  CMatrix s1 = pauli(1), s2 = pauli(2), s3 = pauli(3);
  Poly eta1 = Poly::monomial({0, 0, 1, 0}, s1) +
              Poly::monomial({0, 0, 0, 1}, (-i * s2 + s3).eval());
  Poly eta2 = Poly::monomial({0, 0, 0, 1}, (-1.0 * s1).eval()) +
              Poly::monomial({0, 0, 1, 0}, (i * s2 + s3).eval());

  // A = −(f/2r)(η − η*); s(r) = f(r)/(2r), finite at 0 since f(0) = 0
  auto s = [f](double r) { return r < 1e-14 ? 0.0 : f.f(r) / (2 * r); };
  auto ds = [f, s](double r) {
    if (r < 1e-10) return 0.0;
    return (f.df(r) - 2 * s(r)) / (2 * r);
  };

  // coefficient s(r)·P(z) with exact first derivatives
  auto radial_coeff = [&](const Poly& P, double sign) {
    auto eval = [s, P, sign](const Point& z) {
      return (sign * s(z.r2()) * P.eval(z)).eval();
    };
    std::array<Coefficient, 4> derivs;
    for (int w = 0; w < 4; ++w) {
      Poly dP = P.wirtinger(Wirtinger(w));
      derivs[w] = Coefficient::fn(2, [s, ds, P, dP, sign, w](const Point& z) {
        double r = z.r2();
        Complex rfac;
        switch (Wirtinger(w)) {
          case Wirtinger::D1: rfac = std::conj(z.z1); break;
          case Wirtinger::D2: rfac = std::conj(z.z2); break;
          case Wirtinger::Db1: rfac = z.z1; break;
          default: rfac = z.z2; break;
        }
        CMatrix out = sign * ds(r) * rfac * P.eval(z);
        out += sign * s(r) * dP.eval(z);
        return out.eval();
      });
    }
    return Coefficient::fn(2, eval, derivs);
  };

  Connection A;
  A.n = 2;
  A.comp[0] = radial_coeff(eta1, -1);
  A.comp[1] = radial_coeff(eta2, -1);
  A.comp[2] = radial_coeff(eta1.adjointed(), 1);
  A.comp[3] = radial_coeff(eta2.adjointed(), 1);
  return A;
}

double profile_residual_rms(const RadialProfile& f) {
  double acc = 0;
  int count = 0;
  for (double lg = -1.3; lg <= 1.7; lg += 0.075) {
    double r = std::pow(10.0, lg);
    double v = profile_ode_residual(f, r);
    acc += v * v;
    ++count;
  }
  return std::sqrt(acc / count);
}

Coefficient bump_scalar(double R) {
  // exp(R^2/(r^2 - R^2)): the scale-normalized bump, wide enough for the
  // default quadrature to resolve the support boundary
  const double s = R * R;
  auto b = [R, s](double r2) {
    return r2 < R * R ? std::exp(s / (r2 - R * R)) : 0.0;
  };
  auto db = [R, s, b](double r2) {  // d/d(r2)
    if (r2 >= R * R) return 0.0;
    double d = r2 - R * R;
    return -s * b(r2) / (d * d);
  };
  CMatrix one = CMatrix::Constant(1, 1, Complex(1, 0));
  auto eval = [b, one](const Point& z) { return (b(z.r2()) * one).eval(); };
  std::array<Coefficient, 4> derivs;
  for (int w = 0; w < 4; ++w) {
    derivs[w] = Coefficient::fn(1, [db, one, w](const Point& z) {
      Complex rfac;
      switch (Wirtinger(w)) {
        case Wirtinger::D1: rfac = std::conj(z.z1); break;
        case Wirtinger::D2: rfac = std::conj(z.z2); break;
        case Wirtinger::Db1: rfac = z.z1; break;
        default: rfac = z.z2; break;
      }
      return (db(z.r2()) * rfac * one).eval();
    });
  }
  return Coefficient::fn(1, eval, derivs);
}

Connection random_bump_connection(Sampler& sampler, int n, double R) {
  Coefficient b = bump_scalar(R);
  EtaForm eta;
  eta.n = n;
  eta.a1 = mul(b, Coefficient::constant(sampler.matrix(n)));
  eta.a2 = mul(b, Coefficient::constant(sampler.matrix(n)));
  return from_eta(eta, EtaKind::Skew);
}

FormField random_bump_field(Sampler& sampler, int n, int degree, double R,
                            int max_power) {
  Coefficient b = bump_scalar(R);
  FormField out(n);
  for (Mask m : basis_masks(degree)) {
    Poly p(n);
    for (int t = 0; t < 2; ++t) {
      // total degree <= 2 keeps the integrands resolvable on default grids
      std::array<int, 4> pw{};
      for (int d = 0; d < 2; ++d) {
        int slot = int(sampler.uniform(0, 3.999));
        if (pw[slot] < max_power) pw[slot] += 1;
      }
      p = p + Poly::monomial(pw, sampler.matrix(n, 0.4));
    }
    out.set(m, mul(b, Coefficient::from_poly(p)));
  }
  return out;
}

double radial_vacuum_H(const Connection& A, const QuadratureSpec& quad) {
  const double rho_max = 2 * quad.radius;
  QuadratureSpec q1;
  q1.nodes_per_axis = std::max(48, 6 * quad.nodes_per_axis);
  q1.radius = rho_max / 2;
  QuadratureGrid g = quadrature_1d(q1);
  double acc = 0;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    double rho = g.nodes[i] + rho_max / 2;
    Complex l = lagrangian(A, nullptr, Metric::euclidean(),
                           Point::from_x(rho, 0, 0, 0));
    acc += g.weights[i] * 2 * M_PI * M_PI * rho * rho * rho * l.real();
  }
  return acc;
}

OptimizeResult optimize_profile(const ProfileParam& init, double mu_hint,
                                const QuadratureSpec& quad,
                                const OptimizeOptions& opts) {
  if (init.radii.size() < 5)
    throw std::invalid_argument("optimize_profile: need K >= 4 knots");
  OptimizeResult out;
  ProfileParam cur = init;
  cur.mu_hint = mu_hint;
  cur.clamp();

  auto objective = [&](const ProfileParam& p) {
    Connection A = profile_connection(p.profile());
    return Complex(radial_vacuum_H(A, quad), 0);
  };

  Complex H = objective(cur);
  out.initial_residual = profile_residual_rms(cur.profile());
  out.history.push_back({0, H.real(), out.initial_residual, 0});

  const int K = int(cur.values.size());
  std::vector<double> step(K, opts.initial_step);
  int iter = 0;
  bool last_sweep_accepted = true;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    bool any_accepted = false;
    for (int k = 1; k < K; ++k) {  // knot 0 pinned at f(0) = 0
      int backtracks = 0;
      while (backtracks < opts.max_backtracks && step[k] >= opts.min_step) {
        bool accepted = false;
        for (double dir : {+1.0, -1.0}) {
          ProfileParam cand = cur;
          cand.values[k] = std::min(1.0, std::max(0.0, cand.values[k] + dir * step[k]));
          if (cand.values[k] == cur.values[k]) continue;
          Complex Hc = objective(cand);
          if (Hc.real() < H.real() - 1e-15) {
            cur = cand;
            H = Hc;
            ++iter;
            out.history.push_back({iter, H.real(),
                                   profile_residual_rms(cur.profile()),
                                   step[k]});
            accepted = true;
            any_accepted = true;
            break;
          }
        }
        if (accepted) break;
        step[k] *= 0.5;
        ++backtracks;
      }
    }
    last_sweep_accepted = any_accepted;
    double mx = 0;
    for (int k = 1; k < K; ++k) mx = std::max(mx, step[k]);
    if (mx < opts.min_step) break;
  }
  // steps still live but a whole sweep made no progress: report a stall
  double mx = 0;
  for (int k = 1; k < K; ++k) mx = std::max(mx, step[k]);
  out.stalled = !last_sweep_accepted && mx >= opts.min_step;
  out.profile = cur;
  out.final_residual = profile_residual_rms(cur.profile());
  out.final_H = H;
  return out;
}

}  // namespace ymforms
