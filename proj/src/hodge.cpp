#include "ymforms/hodge.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ymforms {

namespace {

// dz1 = dx0 + i dx1, dz2 = dx2 + i dx3, bars conjugate.
std::array<Complex, 4> real_components(Generator g) {
  const Complex i(0, 1);
  switch (g) {
    case Generator::Dz1: return {1, i, 0, 0};
    case Generator::Dz2: return {0, 0, 1, i};
    case Generator::Dzb1: return {1, -i, 0, 0};
    default: return {0, 0, 1, -i};
  }
}

std::vector<int> mask_generators(Mask m) {
  std::vector<int> gs;
  for (int g = 0; g < 4; ++g)
    if (m >> g & 1) gs.push_back(g);
  return gs;
}

}  // namespace

Complex metric_pairing(Generator a, Generator b, const Metric& m) {
  auto ca = real_components(a), cb = real_components(b);
  Complex acc(0, 0);
  for (int s = 0; s < 4; ++s) acc += ca[s] * std::conj(cb[s]) * m.g[s];
  return acc;
}

Complex basis_pairing(Mask a, Mask b, const Metric& m) {
  if (mask_degree(a) != mask_degree(b)) return {0, 0};
  auto ga = mask_generators(a), gb = mask_generators(b);
  const int p = int(ga.size());
  if (p == 0) return {1, 0};
  CMatrix gram(p, p);
  for (int s = 0; s < p; ++s)
    for (int t = 0; t < p; ++t)
      gram(s, t) = metric_pairing(Generator(ga[s]), Generator(gb[t]), m);
  return gram.determinant();
}

StarTable build_star_table(const Metric& m) {
  StarTable table;
  table.kind_ = m.kind;
  // vol = (i/2)^2 sqrt|det g| dz1∧dz̄1∧dz2∧dz̄2; sorting gives +1/4 Ξ
  double sdet = std::sqrt(std::abs(m.g.prod()));
  table.vol_coeff_ = Complex(0.25 * sdet, 0);

  for (int p = 0; p <= 4; ++p) {
    auto src = basis_masks(p);
    auto dst = basis_masks(4 - p);
    const int sz = int(src.size());
    // W[e][c] * X[c][b] = <e, conj(b)> * vol_coeff
    CMatrix W(sz, sz), rhs(sz, sz);
    for (int e = 0; e < sz; ++e)
      for (int c = 0; c < sz; ++c)
        W(e, c) = Complex(wedge_sign(src[e], dst[c]), 0);
    for (int b = 0; b < sz; ++b) {
      double cs = conj_sort_sign(src[b]);
      Mask cm = conj_mask(src[b]);
      for (int e = 0; e < sz; ++e)
        rhs(e, b) = cs * basis_pairing(src[e], cm, m) * table.vol_coeff_;
    }
    Eigen::FullPivLU<CMatrix> lu(W);
    if (!lu.isInvertible())
      throw std::logic_error("star table: singular wedge pairing");
    CMatrix X = lu.solve(rhs);
    for (int b = 0; b < sz; ++b)
      for (int c = 0; c < sz; ++c)
        if (std::abs(X(c, b)) > 1e-13)
          table.map_[src[b]].push_back({dst[c], X(c, b)});
  }
  return table;
}

const StarTable& star_table(const Metric& m) {
  static const StarTable euclid = build_star_table(Metric::euclidean());
  static const StarTable mink = build_star_table(Metric::minkowski());
  return m.kind == MetricKind::Euclidean ? euclid : mink;
}

FormValue StarTable::apply(const FormValue& v) const {
  FormValue out(v.dim());
  for (int m = 0; m < 16; ++m) {
    if (!v.has(Mask(m))) continue;
    for (const auto& e : map_[m]) out.accumulate(e.target, e.factor * v.coef(Mask(m)));
  }
  return out;
}

FormField StarTable::apply(const FormField& f) const {
  FormField out(f.dim());
  for (int m = 0; m < 16; ++m) {
    if (!f.has(Mask(m))) continue;
    for (const auto& e : map_[m]) out.accumulate(e.target, e.factor * f.coef(Mask(m)));
  }
  return out;
}

const char* to_string(DualityClass c) {
  switch (c) {
    case DualityClass::SD: return "SD";
    case DualityClass::ASD: return "ASD";
    case DualityClass::Mixed: return "mixed";
    default: return "zero";
  }
}

DualityClass classify_duality(const FormValue& omega, const Metric& m, double tol) {
  double nrm = omega.norm();
  if (nrm <= tol) return DualityClass::Zero;
  FormValue s = star(omega, m);
  Complex lambda = m.kind == MetricKind::Euclidean ? Complex(1, 0) : Complex(0, 1);
  if ((s - lambda * omega).norm() <= tol * nrm) return DualityClass::SD;
  if ((s + lambda * omega).norm() <= tol * nrm) return DualityClass::ASD;
  return DualityClass::Mixed;
}

Complex pointwise_inner(const FormValue& mu, const FormValue& eta, const Metric& m,
                        TraceKind kind) {
  if (mu.degree() >= 0 && eta.degree() >= 0 && mu.degree() != eta.degree())
    throw std::invalid_argument("pointwise_inner: degree mismatch");
  FormValue top = wedge(mu, star(adjoint_form(eta), m));
  return trace(top.coef(Mask(0b1111)), kind) / star_table(m).vol_coeff();
}

namespace {

// Gauss–Legendre nodes on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pd = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pd = n * (t * p1 - p0) / (t * t - 1);
      double dt = p1 / pd;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1 - t * t) * pd * pd);
  }
}

}  // namespace

QuadratureGrid quadrature_1d(const QuadratureSpec& q) {
  QuadratureGrid g;
  const int n = q.nodes_per_axis;
  if (n < 1) throw std::invalid_argument("quadrature: need at least one node");
  if (q.rule == QuadratureSpec::Rule::Gauss) {
    gauss_legendre(n, g.nodes, g.weights);
    for (int i = 0; i < n; ++i) {
      g.nodes[i] *= q.radius;
      g.weights[i] *= q.radius;
    }
  } else {
    double h = 2 * q.radius / n;
    for (int i = 0; i < n; ++i) {
      g.nodes.push_back(-q.radius + (i + 0.5) * h);
      g.weights.push_back(h);
    }
  }
  return g;
}

Complex integrate(const QuadratureSpec& q,
                  const std::function<Complex(const Point&)>& f) {
  QuadratureGrid g = quadrature_1d(q);
  const int n = int(g.nodes.size());
  Complex acc(0, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Point z = Point::from_x(g.nodes[a], g.nodes[b], g.nodes[c], g.nodes[d]);
          Complex v = f(z);
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("integrate: non-finite integrand at a node");
          acc += g.weights[a] * g.weights[b] * g.weights[c] * g.weights[d] * v;
        }
  return acc;
}

Complex global_inner(const FormField& mu, const FormField& eta, const Metric& m,
                     const QuadratureSpec& quad, TraceKind kind) {
  return integrate(quad, [&](const Point& z) {
    return pointwise_inner(mu.eval(z), eta.eval(z), m, kind);
  });
}

}  // namespace ymforms
