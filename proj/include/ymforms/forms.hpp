#pragma once

#include <array>

#include "ymforms/coefficient.hpp"

namespace ymforms {

// A-valued form at a point, stored against sorted basis masks. Pure-degree
// forms have entries in a single degree; sums of degrees are representable
// and all operations act mask-wise.
class FormValue {
 public:
  explicit FormValue(int n = 1) : n_(n) {}

  int dim() const { return n_; }
  bool has(Mask m) const { return c_[m].size() != 0; }
  const CMatrix& coef(Mask m) const {
    if (has(m)) return c_[m];
    zero_ = CMatrix::Zero(n_, n_);
    return zero_;
  }
  void set(Mask m, CMatrix v) {
    if (v.size() == 0) return;
    c_[m] = std::move(v);
  }
  void accumulate(Mask m, const CMatrix& v) {
    if (has(m))
      c_[m] += v;
    else
      c_[m] = v;
  }

  // p for a pure p-form, -1 for a mixed-degree sum, -2 for the zero form
  // (which belongs to every degree)
  int degree() const {
    int d = -2;
    for (int m = 0; m < 16; ++m) {
      if (!has(Mask(m)) || c_[m].norm() == 0.0) continue;
      int dm = mask_degree(Mask(m));
      if (d == -2)
        d = dm;
      else if (d != dm)
        return -1;
    }
    return d;
  }

  double norm() const {
    double s = 0;
    for (int m = 0; m < 16; ++m)
      if (has(Mask(m))) s += c_[m].squaredNorm();
    return std::sqrt(s);
  }

  FormValue operator+(const FormValue& o) const {
    FormValue out = *this;
    for (int m = 0; m < 16; ++m)
      if (o.has(Mask(m))) out.accumulate(Mask(m), o.c_[m]);
    return out;
  }
  FormValue operator-(const FormValue& o) const {
    return *this + Complex(-1, 0) * o;
  }
  friend FormValue operator*(Complex s, const FormValue& v) {
    FormValue out(v.n_);
    for (int m = 0; m < 16; ++m)
      if (v.has(Mask(m))) out.set(Mask(m), s * v.c_[m]);
    return out;
  }

 private:
  int n_;
  std::array<CMatrix, 16> c_;
  mutable CMatrix zero_;
};

FormValue wedge(const FormValue& a, const FormValue& b);
FormValue adjoint_form(const FormValue& a);

// A-valued form field: per-basis coefficient functions.
class FormField {
 public:
  explicit FormField(int n = 1) : n_(n) {}

  int dim() const { return n_; }
  const Coefficient& coef(Mask m) const { return c_[m]; }
  void set(Mask m, Coefficient f) { c_[m] = std::move(f); }
  void accumulate(Mask m, const Coefficient& f) { c_[m] = c_[m] + f; }
  bool has(Mask m) const { return !c_[m].is_zero(); }

  FormValue eval(const Point& z) const {
    FormValue v(n_);
    for (int m = 0; m < 16; ++m)
      if (has(Mask(m))) v.set(Mask(m), c_[m].eval(z));
    return v;
  }

  int degree() const {
    int d = -2;
    for (int m = 0; m < 16; ++m) {
      if (!has(Mask(m))) continue;
      int dm = mask_degree(Mask(m));
      if (d == -2)
        d = dm;
      else if (d != dm)
        return -1;
    }
    return d;
  }

  DerivStrategy strategy() const {
    DerivStrategy s = DerivStrategy::ExactPoly;
    for (int m = 0; m < 16; ++m)
      if (has(Mask(m))) s = weaker(s, c_[m].strategy());
    return s;
  }

  FormField operator+(const FormField& o) const {
    FormField out = *this;
    for (int m = 0; m < 16; ++m)
      if (o.has(Mask(m))) out.accumulate(Mask(m), o.c_[m]);
    return out;
  }
  FormField operator-(const FormField& o) const {
    return *this + Complex(-1, 0) * o;
  }
  friend FormField operator*(Complex s, const FormField& f) {
    FormField out(f.n_);
    for (int m = 0; m < 16; ++m)
      if (f.has(Mask(m))) out.set(Mask(m), s * f.c_[m]);
    return out;
  }

 private:
  int n_;
  std::array<Coefficient, 16> c_;
};

// Coefficients multiply in wedge order; repeated generators annihilate.
FormField wedge(const FormField& a, const FormField& b);

// Coefficient adjoint, generators conjugated in place, then re-sorted.
FormField adjoint_form(const FormField& a);

enum class DPart { Full, Del, Delbar };

// Exterior derivative (or a Dolbeault part) of a form field.
FormField exterior_d(const FormField& a, DPart part = DPart::Full);

// One Wirtinger derivative of a coefficient function, evaluated at a point.
inline CMatrix wirtinger(const Coefficient& f, const Point& z, Wirtinger which) {
  return f.derivative(which).eval(z, f.dim());
}

}  // namespace ymforms
