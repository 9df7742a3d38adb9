#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ymforms/point.hpp"

namespace ymforms {

// Rational function of the real radial variable r = |z|^2, with complex
// coefficients. Ascending power order; an empty numerator means 0.
struct RationalR {
  std::vector<Complex> num{Complex(1, 0)};
  std::vector<Complex> den{Complex(1, 0)};

  static RationalR one() { return RationalR{}; }
  static RationalR constant(Complex c) { return RationalR{{c}, {Complex(1, 0)}}; }

  bool is_zero() const { return num.empty(); }
  bool is_constant() const { return num.size() <= 1 && den.size() == 1; }
  Complex constant_value() const {
    return num.empty() ? Complex(0, 0) : num[0] / den[0];
  }

  static Complex horner(const std::vector<Complex>& p, double r) {
    Complex v(0, 0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * r + *it;
    return v;
  }
  Complex eval(double r) const {
    if (num.empty()) return {0, 0};
    return horner(num, r) / horner(den, r);
  }

  static std::vector<Complex> mul(const std::vector<Complex>& a,
                                  const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Complex> c(a.size() + b.size() - 1, Complex(0, 0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  }
  static std::vector<Complex> sub(std::vector<Complex> a,
                                  const std::vector<Complex>& b) {
    if (a.size() < b.size()) a.resize(b.size(), Complex(0, 0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (!a.empty() && std::abs(a.back()) == 0.0) a.pop_back();
    return a;
  }
  static std::vector<Complex> diff(const std::vector<Complex>& p) {
    std::vector<Complex> d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(double(i) * p[i]);
    return d;
  }

  // d/dr (p/q) = (p'q - pq')/q^2
  RationalR derivative() const {
    if (num.empty()) return RationalR{{}, {Complex(1, 0)}};
    RationalR out;
    out.num = sub(mul(diff(num), den), mul(num, diff(den)));
    out.den = mul(den, den);
    if (out.num.empty()) out.den = {Complex(1, 0)};
    return out;
  }

  RationalR operator*(const RationalR& o) const {
    if (is_zero() || o.is_zero()) return RationalR{{}, {Complex(1, 0)}};
    return RationalR{mul(num, o.num), mul(den, o.den)};
  }
  RationalR conjugated() const {
    RationalR out = *this;
    for (auto& c : out.num) c = std::conj(c);
    for (auto& c : out.den) c = std::conj(c);
    return out;
  }
  bool same_shape(const RationalR& o) const { return num == o.num && den == o.den; }
};

// Sum of terms R(r) * z1^a z2^b z̄1^c z̄2^d * M with M in M_n(C). Closed under
// sums, products, adjoints and Wirtinger derivatives; plain polynomials are
// the terms with constant radial part, and those additionally support exact
// antiderivatives and partial evaluation.
class Poly {
 public:
  struct Term {
    RationalR rad;
    std::array<int, 4> pw{0, 0, 0, 0};  // powers of z1, z2, z̄1, z̄2
    CMatrix m;
  };

  explicit Poly(int n = 1) : n_(n) {}

  static Poly constant(const CMatrix& m) {
    Poly p(int(m.rows()));
    p.add_term({RationalR::one(), {0, 0, 0, 0}, m});
    return p;
  }
  static Poly monomial(std::array<int, 4> pw, const CMatrix& m) {
    Poly p(int(m.rows()));
    p.add_term({RationalR::one(), pw, m});
    return p;
  }
  static Poly radial(RationalR rad, std::array<int, 4> pw, const CMatrix& m) {
    Poly p(int(m.rows()));
    p.add_term({std::move(rad), pw, m});
    return p;
  }

  int dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  // all radial parts constant, i.e. an honest polynomial in z and z̄
  bool is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.rad.is_constant(); });
  }

  CMatrix eval(const Point& z) const {
    CMatrix acc = CMatrix::Zero(n_, n_);
    const Complex zb1 = std::conj(z.z1), zb2 = std::conj(z.z2);
    for (const auto& t : terms_) {
      Complex s = t.rad.is_constant() ? t.rad.constant_value() : t.rad.eval(z.r2());
      s *= ipow(z.z1, t.pw[0]) * ipow(z.z2, t.pw[1]) * ipow(zb1, t.pw[2]) *
           ipow(zb2, t.pw[3]);
      acc.noalias() += s * t.m;
    }
    return acc;
  }

  Poly wirtinger(Wirtinger w) const {
    // d1 r = z̄1, d2 r = z̄2, d̄1 r = z1, d̄2 r = z2
    static constexpr int kMonoSlot[4] = {0, 1, 2, 3};
    static constexpr int kRadSlot[4] = {2, 3, 0, 1};
    const int ms = kMonoSlot[int(w)], rs = kRadSlot[int(w)];
    Poly out(n_);
    for (const auto& t : terms_) {
      if (t.pw[ms] > 0) {
        Term d = t;
        d.m = double(t.pw[ms]) * t.m;
        d.pw[ms] -= 1;
        out.add_term(std::move(d));
      }
      if (!t.rad.is_constant() || !t.rad.is_zero()) {
        RationalR r = t.rad.derivative();
        if (!r.is_zero()) {
          Term d = t;
          d.rad = std::move(r);
          d.pw[rs] += 1;
          out.add_term(std::move(d));
        }
      }
    }
    return out;
  }

  // (R z1^a z2^b z̄1^c z̄2^d M)* = R̄ z1^c z2^d z̄1^a z̄2^b M*
  Poly adjointed() const {
    Poly out(n_);
    for (const auto& t : terms_)
      out.add_term({t.rad.conjugated(), {t.pw[2], t.pw[3], t.pw[0], t.pw[1]},
                    t.m.adjoint()});
    return out;
  }

  Poly conjugated_scalarwise() const {  // entrywise conjugate, powers swapped
    Poly out(n_);
    for (const auto& t : terms_)
      out.add_term({t.rad.conjugated(), {t.pw[2], t.pw[3], t.pw[0], t.pw[1]},
                    t.m.conjugate()});
    return out;
  }

  // term-wise antiderivative in z1 (which = 0) or z2 (which = 1), integration
  // constant 0; requires a plain polynomial
  Poly antiderivative(int which) const {
    Poly out(n_);
    for (const auto& t : terms_) {
      if (!t.rad.is_constant())
        throw std::domain_error("antiderivative: radial coefficient is not polynomial");
      Term a = t;
      a.pw[which] += 1;
      a.m = t.m / double(a.pw[which]);
      out.add_term(std::move(a));
    }
    return out;
  }

  // partial evaluation z1 := w1 (and z̄1 := conj(w1)); which = 1 substitutes z2
  Poly substitute(int which, Complex w) const {
    Poly out(n_);
    for (const auto& t : terms_) {
      if (!t.rad.is_constant())
        throw std::domain_error("substitute: radial coefficient is not polynomial");
      Term s = t;
      Complex f = ipow(w, t.pw[which]) * ipow(std::conj(w), t.pw[which + 2]);
      s.pw[which] = 0;
      s.pw[which + 2] = 0;
      s.m = f * t.m;
      out.add_term(std::move(s));
    }
    return out;
  }

  Poly operator+(const Poly& o) const {
    check_dim(o);
    Poly out = *this;
    for (const auto& t : o.terms_) out.add_term(t);
    return out;
  }
  Poly operator-(const Poly& o) const { return *this + (Complex(-1, 0) * o); }
  Poly operator*(const Poly& o) const {
    check_dim(o);
    Poly out(n_);
    for (const auto& a : terms_)
      for (const auto& b : o.terms_)
        out.add_term({a.rad * b.rad,
                      {a.pw[0] + b.pw[0], a.pw[1] + b.pw[1], a.pw[2] + b.pw[2],
                       a.pw[3] + b.pw[3]},
                      a.m * b.m});
    return out;
  }
  friend Poly operator*(Complex c, const Poly& p) {
    Poly out(p.n_);
    for (const auto& t : p.terms_) out.add_term({t.rad, t.pw, c * t.m});
    return out;
  }

 private:
  static Complex ipow(Complex z, int k) {
    Complex v(1, 0);
    for (int i = 0; i < k; ++i) v *= z;
    return v;
  }
  void check_dim(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("poly: algebra dimension mismatch");
  }
  void add_term(Term t) {
    if (t.m.size() == 0 || t.m.norm() == 0.0 || t.rad.is_zero()) return;
    for (auto& u : terms_) {
      if (u.pw == t.pw && u.rad.same_shape(t.rad)) {
        u.m += t.m;
        if (u.m.norm() == 0.0)
          terms_.erase(terms_.begin() + (&u - terms_.data()));
        return;
      }
    }
    terms_.push_back(std::move(t));
  }

  int n_;
  std::vector<Term> terms_;
};

}  // namespace ymforms
