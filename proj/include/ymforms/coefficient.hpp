#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "ymforms/poly.hpp"

namespace ymforms {

enum class DerivStrategy { ExactPoly, ClosedForm, FiniteDifference };

inline DerivStrategy weaker(DerivStrategy a, DerivStrategy b) {
  return DerivStrategy(std::max(int(a), int(b)));
}

struct FdOptions {
  double h = 1e-5;
  bool richardson = false;
};

// A-valued coefficient function on C^2, with a derivative strategy. Immutable
// and shared; a default-constructed Coefficient is the zero function of
// context-determined dimension.
class Coefficient {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual CMatrix eval(const Point& z) const = 0;
    virtual int dim() const = 0;
    virtual DerivStrategy strategy() const = 0;
    virtual Coefficient derivative(Wirtinger w, const Coefficient& self) const;
  };

  Coefficient() = default;
  explicit Coefficient(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  bool is_zero() const { return !impl_; }
  int dim() const { return impl_ ? impl_->dim() : 0; }
  DerivStrategy strategy() const {
    return impl_ ? impl_->strategy() : DerivStrategy::ExactPoly;
  }
  CMatrix eval(const Point& z, int n_hint = 0) const {
    if (!impl_) return CMatrix::Zero(n_hint, n_hint);
    return impl_->eval(z);
  }
  CMatrix operator()(const Point& z) const { return eval(z); }
  Coefficient derivative(Wirtinger w) const {
    if (!impl_) return {};
    return impl_->derivative(w, *this);
  }
  const Poly* poly() const;

  static Coefficient from_poly(Poly p);
  static Coefficient constant(const CMatrix& m) { return from_poly(Poly::constant(m)); }
  // closed-form function; pass exact partial derivatives when available
  static Coefficient fn(int n, std::function<CMatrix(const Point&)> f,
                        std::array<Coefficient, 4> derivs = {},
                        FdOptions fd = {});

 private:
  std::shared_ptr<const Impl> impl_;
};

namespace detail {

struct PolyImpl final : Coefficient::Impl {
  Poly p;
  explicit PolyImpl(Poly q) : p(std::move(q)) {}
  CMatrix eval(const Point& z) const override { return p.eval(z); }
  int dim() const override { return p.dim(); }
  DerivStrategy strategy() const override { return DerivStrategy::ExactPoly; }
  Coefficient derivative(Wirtinger w, const Coefficient&) const override {
    return Coefficient::from_poly(p.wirtinger(w));
  }
};

struct FnImpl final : Coefficient::Impl {
  int n;
  std::function<CMatrix(const Point&)> f;
  std::array<Coefficient, 4> dv;
  bool have_derivs = false;
  FdOptions fd;
  CMatrix eval(const Point& z) const override { return f(z); }
  int dim() const override { return n; }
  DerivStrategy strategy() const override {
    return have_derivs ? DerivStrategy::ClosedForm : DerivStrategy::FiniteDifference;
  }
  Coefficient derivative(Wirtinger w, const Coefficient& self) const override {
    if (have_derivs && !dv[int(w)].is_zero()) return dv[int(w)];
    if (have_derivs) return {};  // an exact zero derivative
    return Impl::derivative(w, self);
  }
};

struct SumImpl final : Coefficient::Impl {
  std::vector<Coefficient> parts;
  CMatrix eval(const Point& z) const override {
    CMatrix acc = parts.front().eval(z);
    for (size_t i = 1; i < parts.size(); ++i) acc += parts[i].eval(z);
    return acc;
  }
  int dim() const override { return parts.front().dim(); }
  DerivStrategy strategy() const override {
    DerivStrategy s = DerivStrategy::ExactPoly;
    for (const auto& p : parts) s = weaker(s, p.strategy());
    return s;
  }
  Coefficient derivative(Wirtinger w, const Coefficient&) const override;
};

struct ScaleImpl final : Coefficient::Impl {
  Complex c;
  Coefficient a;
  CMatrix eval(const Point& z) const override { return c * a.eval(z); }
  int dim() const override { return a.dim(); }
  DerivStrategy strategy() const override { return a.strategy(); }
  Coefficient derivative(Wirtinger w, const Coefficient&) const override;
};

// matrix product; a 1x1 factor broadcasts as a scalar field
struct ProdImpl final : Coefficient::Impl {
  Coefficient a, b;
  static CMatrix combine(const CMatrix& x, const CMatrix& y) {
    if (x.rows() == 1 && y.rows() > 1) return x(0, 0) * y;
    if (y.rows() == 1 && x.rows() > 1) return y(0, 0) * x;
    return x * y;
  }
  CMatrix eval(const Point& z) const override { return combine(a.eval(z), b.eval(z)); }
  int dim() const override { return std::max(a.dim(), b.dim()); }
  DerivStrategy strategy() const override { return weaker(a.strategy(), b.strategy()); }
  Coefficient derivative(Wirtinger w, const Coefficient&) const override;
};

struct AdjImpl final : Coefficient::Impl {
  Coefficient a;
  CMatrix eval(const Point& z) const override { return a.eval(z).adjoint(); }
  int dim() const override { return a.dim(); }
  DerivStrategy strategy() const override { return a.strategy(); }
  Coefficient derivative(Wirtinger w, const Coefficient&) const override;
};

struct InvImpl final : Coefficient::Impl {
  Coefficient a;
  CMatrix eval(const Point& z) const override {
    CMatrix m = a.eval(z);
    Eigen::FullPivLU<CMatrix> lu(m);
    if (!lu.isInvertible())
      throw std::domain_error("gauge map singular at z = (" +
                              std::to_string(z.z1.real()) + "+" +
                              std::to_string(z.z1.imag()) + "i, " +
                              std::to_string(z.z2.real()) + "+" +
                              std::to_string(z.z2.imag()) + "i)");
    return lu.inverse();
  }
  int dim() const override { return a.dim(); }
  DerivStrategy strategy() const override { return a.strategy(); }
  Coefficient derivative(Wirtinger w, const Coefficient& self) const override;
};

// central-difference Wirtinger derivative of an arbitrary coefficient
struct FdImpl final : Coefficient::Impl {
  Coefficient base;
  Wirtinger w;
  FdOptions fd;
  static CMatrix real_partial(const Coefficient& g, const Point& z, int s, double h) {
    if (h <= 0) throw std::domain_error("finite-difference step underflow");
    double x[4] = {z.x0(), z.x1(), z.x2(), z.x3()};
    x[s] += h;
    Point zp = Point::from_x(x[0], x[1], x[2], x[3]);
    x[s] -= 2 * h;
    Point zm = Point::from_x(x[0], x[1], x[2], x[3]);
    return (g.eval(zp) - g.eval(zm)) / (2 * h);
  }
  CMatrix step(const Point& z, double h) const {
    // d/dz_k = (d/dx_{2k-2} - i d/dx_{2k-1})/2, conjugate flips the sign of i
    const int k = int(w) % 2;
    const Complex i_factor = (int(w) < 2) ? Complex(0, -0.5) : Complex(0, 0.5);
    return 0.5 * real_partial(base, z, 2 * k, h) +
           i_factor * real_partial(base, z, 2 * k + 1, h);
  }
  CMatrix eval(const Point& z) const override {
    CMatrix d = step(z, fd.h);
    if (!fd.richardson) return d;
    CMatrix d2 = step(z, fd.h / 2);
    return (4.0 * d2 - d) / 3.0;
  }
  int dim() const override { return base.dim(); }
  DerivStrategy strategy() const override { return DerivStrategy::FiniteDifference; }
};

}  // namespace detail

inline Coefficient Coefficient::Impl::derivative(Wirtinger w,
                                                 const Coefficient& self) const {
  auto fdi = std::make_shared<detail::FdImpl>();
  fdi->base = self;
  fdi->w = w;
  return Coefficient(fdi);
}

inline const Poly* Coefficient::poly() const {
  auto p = dynamic_cast<const detail::PolyImpl*>(impl_.get());
  return p ? &p->p : nullptr;
}

inline Coefficient Coefficient::from_poly(Poly p) {
  if (p.is_zero()) return {};
  return Coefficient(std::make_shared<detail::PolyImpl>(std::move(p)));
}

inline Coefficient Coefficient::fn(int n, std::function<CMatrix(const Point&)> f,
                                   std::array<Coefficient, 4> derivs, FdOptions fd) {
  auto impl = std::make_shared<detail::FnImpl>();
  impl->n = n;
  impl->f = std::move(f);
  impl->dv = std::move(derivs);
  impl->have_derivs = false;
  for (const auto& d : impl->dv)
    if (!d.is_zero()) impl->have_derivs = true;
  impl->fd = fd;
  return Coefficient(impl);
}

inline Coefficient operator+(const Coefficient& a, const Coefficient& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.poly() && b.poly()) return Coefficient::from_poly(*a.poly() + *b.poly());
  auto s = std::make_shared<detail::SumImpl>();
  s->parts = {a, b};
  return Coefficient(s);
}

inline Coefficient operator*(Complex c, const Coefficient& a) {
  if (a.is_zero() || c == Complex(0, 0)) return {};
  if (a.poly()) return Coefficient::from_poly(c * *a.poly());
  auto s = std::make_shared<detail::ScaleImpl>();
  s->c = c;
  s->a = a;
  return Coefficient(s);
}

inline Coefficient operator-(const Coefficient& a, const Coefficient& b) {
  return a + Complex(-1, 0) * b;
}

inline Coefficient mul(const Coefficient& a, const Coefficient& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.poly() && b.poly() && a.dim() == b.dim())
    return Coefficient::from_poly(*a.poly() * *b.poly());
  auto p = std::make_shared<detail::ProdImpl>();
  p->a = a;
  p->b = b;
  return Coefficient(p);
}

inline Coefficient comm(const Coefficient& a, const Coefficient& b) {
  return mul(a, b) - mul(b, a);
}

inline Coefficient adjointed(const Coefficient& a) {
  if (a.is_zero()) return {};
  if (a.poly()) return Coefficient::from_poly(a.poly()->adjointed());
  auto s = std::make_shared<detail::AdjImpl>();
  s->a = a;
  return Coefficient(s);
}

inline Coefficient inverse_of(const Coefficient& a) {
  auto s = std::make_shared<detail::InvImpl>();
  s->a = a;
  return Coefficient(s);
}

namespace detail {

inline Coefficient SumImpl::derivative(Wirtinger w, const Coefficient&) const {
  Coefficient acc;
  for (const auto& p : parts) acc = acc + p.derivative(w);
  return acc;
}
inline Coefficient ScaleImpl::derivative(Wirtinger w, const Coefficient&) const {
  return c * a.derivative(w);
}
inline Coefficient ProdImpl::derivative(Wirtinger w, const Coefficient&) const {
  return mul(a.derivative(w), b) + mul(a, b.derivative(w));
}
inline Coefficient AdjImpl::derivative(Wirtinger w, const Coefficient&) const {
  // d_k (f*) = (d_k̄ f)*
  return adjointed(a.derivative(conjugate(w)));
}
inline Coefficient InvImpl::derivative(Wirtinger w, const Coefficient& self) const {
  return Complex(-1, 0) * mul(mul(self, a.derivative(w)), self);
}

}  // namespace detail

}  // namespace ymforms
