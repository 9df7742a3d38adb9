#include "ymforms/forms.hpp"

namespace ymforms {

FormValue wedge(const FormValue& a, const FormValue& b) {
  FormValue out(std::max(a.dim(), b.dim()));
  for (int ma = 0; ma < 16; ++ma) {
    if (!a.has(Mask(ma))) continue;
    for (int mb = 0; mb < 16; ++mb) {
      if (!b.has(Mask(mb))) continue;
      int s = wedge_sign(Mask(ma), Mask(mb));
      if (s == 0) continue;
      out.accumulate(Mask(ma | mb),
                     double(s) * (a.coef(Mask(ma)) * b.coef(Mask(mb))));
    }
  }
  return out;
}

FormValue adjoint_form(const FormValue& a) {
  FormValue out(a.dim());
  for (int m = 0; m < 16; ++m) {
    if (!a.has(Mask(m))) continue;
    double s = conj_sort_sign(Mask(m));
    out.accumulate(conj_mask(Mask(m)), s * a.coef(Mask(m)).adjoint().eval());
  }
  return out;
}

FormField wedge(const FormField& a, const FormField& b) {
  if (a.degree() >= 0 && b.degree() >= 0 && a.degree() + b.degree() > 4)
    throw std::invalid_argument("wedge: degree overflow past the volume form");
  FormField out(std::max(a.dim(), b.dim()));
  for (int ma = 0; ma < 16; ++ma) {
    if (!a.has(Mask(ma))) continue;
    for (int mb = 0; mb < 16; ++mb) {
      if (!b.has(Mask(mb))) continue;
      int s = wedge_sign(Mask(ma), Mask(mb));
      if (s == 0) continue;
      out.accumulate(Mask(ma | mb),
                     Complex(s, 0) * mul(a.coef(Mask(ma)), b.coef(Mask(mb))));
    }
  }
  return out;
}

FormField adjoint_form(const FormField& a) {
  FormField out(a.dim());
  for (int m = 0; m < 16; ++m) {
    if (!a.has(Mask(m))) continue;
    Complex s(conj_sort_sign(Mask(m)), 0);
    out.accumulate(conj_mask(Mask(m)), s * adjointed(a.coef(Mask(m))));
  }
  return out;
}

FormField exterior_d(const FormField& a, DPart part) {
  const int g_lo = (part == DPart::Delbar) ? 2 : 0;
  const int g_hi = (part == DPart::Del) ? 2 : 4;
  FormField out(a.dim());
  for (int m = 0; m < 16; ++m) {
    if (!a.has(Mask(m))) continue;
    for (int g = g_lo; g < g_hi; ++g) {
      Mask gm = Mask(1 << g);
      int s = wedge_sign(gm, Mask(m));
      if (s == 0) continue;
      Coefficient d = a.coef(Mask(m)).derivative(Wirtinger(g));
      if (d.is_zero()) continue;
      out.accumulate(Mask(m | gm), Complex(s, 0) * d);
    }
  }
  return out;
}

}  // namespace ymforms
