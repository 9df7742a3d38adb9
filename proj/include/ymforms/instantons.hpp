#pragma once

#include "ymforms/yang_mills.hpp"

namespace ymforms {

// eta = A1 dz1 + A2 dz2, the (1,0) half of a skew-Hermitian connection.
struct EtaForm {
  int n = 1;
  Coefficient a1, a2;
  bool holomorphic = false;
  bool normal = false;

  FormField form() const {
    FormField f(n);
    if (!a1.is_zero()) f.set(Mask(1 << int(Generator::Dz1)), a1);
    if (!a2.is_zero()) f.set(Mask(1 << int(Generator::Dz2)), a2);
    return f;
  }
};

enum class EtaKind { Skew, Hermitian };

// Skew: A = eta − eta* (so A* = −A); Hermitian: A = eta + eta*.
Connection from_eta(const EtaForm& eta, EtaKind kind = EtaKind::Skew);

// Pointwise flag defects: max over the points of |∂̄ coefficients| and of the
// normality gap.
struct EtaFlagDefects {
  double holomorphic = 0;
  double normal = 0;
};
EtaFlagDefects verify_eta_flags(const EtaForm& eta, const std::vector<Point>& pts);

// Residual of the Maurer-Cartan equation dA + A∧A = 0; for a (1,0) form the
// ∂̄ and F12 parts are also reported separately.
struct MaurerCartanResidual {
  FormField total;
  FormField dbar_part;
  Coefficient ff12;  // ∂1A2 − ∂2A1 + [A1, A2]

  double total_at(const Point& z) const { return norm_sum(total.eval(z)); }
  double dbar_at(const Point& z) const { return norm_sum(dbar_part.eval(z)); }
  double ff12_at(const Point& z) const { return ff12.eval(z, total.dim()).norm(); }
};
MaurerCartanResidual maurer_cartan_residual(const FormField& a);

enum class DualityTarget { SD, ASD };

// The metric/target-specific condition of the normal-holomorphic duality
// theorem, with the predicted closed-form curvature.
struct DualityConditionResult {
  Coefficient residual;  // zero iff the condition holds
  Curvature predicted;   // the theorem's closed-form F_A
  Curvature generic;     // dA + A∧A for the cross-check

  double residual_at(const Point& z) const { return residual.eval(z, n).norm(); }
  double crosscheck_at(const Point& z) const {
    return norm_sum(predicted.form.eval(z) - generic.form.eval(z));
  }
  int n = 1;
};
DualityConditionResult duality_residual_thm511(const EtaForm& eta, const Metric& m,
                                               DualityTarget target);

// Constant connection eta − eta* from fixed A1, A2, with the four SD/ASD
// condition sets and the strict star classification.
struct ConstantReport {
  double euclid_sd = 0, euclid_asd = 0;  // condition residual norms
  double mink_sd = 0, mink_asd = 0;
  bool normal1 = false, normal2 = false;
  DualityClass strict_class = DualityClass::Zero;
  // per-metric component identities that the condition set implies
  double component_identity_defect = 0;
};
std::pair<Connection, ConstantReport> build_constant(const CMatrix& A1,
                                                     const CMatrix& A2,
                                                     const Metric& m);

// Example family A1 = diag(h, h+1−i), A2 = U* diag(H+cos z2, H+i sin z2) U
// with H(z) = ∫_0^{z1} ∂2 h; h a holomorphic polynomial.
struct Example63 {
  EtaForm eta;
  Connection A;
};
Example63 build_example_6_3(const Poly& h_scalar);

// Quantized Dirac monopole eta = z̄1 B1 dz1 + z̄2 B2 dz2.
struct DiracReport {
  bool normal1 = false, normal2 = false;
  double cond_a = 0;  // |(B1+B1*) − (B2+B2*)|
  double cond_b = 0;  // |(B1+B1*) + (B2+B2*)|
  DualityClass strict_class = DualityClass::Zero;
  bool curvature_nonzero = false;
};
std::pair<Connection, DiracReport> build_dirac_monopole(const CMatrix& B1,
                                                        const CMatrix& B2);

struct BPSTParams {
  double mu = 1.0;
};

// The BPST instanton A = f γ^{-1}dγ, f = |z|^2/(|z|^2+μ), with its derived
// data. All coefficients carry exact derivatives (rational in r = |z|^2).
struct BPSTBundle {
  Connection A;
  EtaForm eta;        // η with η−η* = −2|z|^2 γ^{-1}dγ
  Coefficient gamma;  // SU(2)-valued, defined away from the origin
  FormField gamma_mc;  // γ^{-1}dγ with exact derivatives
  std::function<double(double)> f;  // profile in r = |z|^2
  std::function<double(double)> p;  // μ/(r+μ)^2
  double mu = 1.0;
};
BPSTBundle build_bpst(const BPSTParams& params);

// Radial profile with an exact derivative in r = |z|^2.
struct RadialProfile {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

// |λ f' − (f^2−f) λ'| with λ = 1/(2r), pointwise in r.
double profile_ode_residual(const RadialProfile& f, double r);
std::vector<double> profile_ode_residual(const RadialProfile& f,
                                         const std::vector<double>& radii);

// Gauge normalization of a holomorphic-normal eta satisfying the Minkowski
// SD identity (or a closed commuting flat eta): constructs the exact η̃, its
// antiderivative h̃ and g = exp(−h̃+h̃*), and returns the transformed
// connection together with the direct normal form.
struct GaugeNormalizeResult {
  GaugeMap g;
  Connection normalized;   // A_g via the full gauge transform
  Connection normal_form;  // η' − η'* assembled directly
  CMatrix kept_a1;         // the constant A'_1
  bool full_subtraction = false;  // flat commuting case: A_g = 0
  double unitarity_defect = 0;
  double exactness_defect = 0;
};
GaugeNormalizeResult gauge_normalize(const EtaForm& eta, const Point& w = {},
                                     double tol = 1e-8);

}  // namespace ymforms
