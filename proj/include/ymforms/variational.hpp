#pragma once

#include "ymforms/instantons.hpp"
#include "ymforms/sampling.hpp"

namespace ymforms {

// Chromo-electric and chromo-magnetic components of a curvature 2-form.
struct FieldPair {
  std::array<CMatrix, 3> E, B;
};

FieldPair extract_eb(const FormValue& curvature);
inline FieldPair extract_eb(const Curvature& F, const Point& z) {
  return extract_eb(F.form.eval(z));
}

// Inverse of the component map, for round-trip checks.
FormValue eb_to_curvature(const FieldPair& fp);

// <E,B> = Tr(E1 B1* + E2 B2* + E3 B3*)
Complex eb_inner(const FieldPair& fp, TraceKind kind = TraceKind::Matrix);

// (E Hermitian?, B Hermitian?) componentwise within tol
std::pair<bool, bool> hermitian_field_check(const FieldPair& fp, double tol = 1e-10);

// Pointwise Lagrangian density: the scalar l with L(A) = l·vol at z, where
// L(A) = −A∧★J* + ½ F_A∧★F_A*, traced.
Complex lagrangian(const Connection& A, const CurrentForm* J, const Metric& m,
                   const Point& z, TraceKind kind = TraceKind::Matrix);

struct FunctionalResult {
  Complex total;           // H(A)
  Complex source_part;     // (A, −J)
  Complex curvature_part;  // ½ (F_A, F_A)
};

FunctionalResult functional(const Connection& A, const CurrentForm* J,
                            const Metric& m, const QuadratureSpec& quad,
                            TraceKind kind = TraceKind::Matrix);

struct DirectionalDerivative {
  Complex finite_difference;  // Richardson-extrapolated central difference
  Complex inner_product;      // (B, D_A*F_A − J)
  double gap;
};

DirectionalDerivative directional_derivative(const Connection& A,
                                             const Connection& B,
                                             const CurrentForm* J, const Metric& m,
                                             const QuadratureSpec& quad,
                                             TraceKind kind = TraceKind::Matrix,
                                             double t = 1e-4);

// Radial profile through knots, monotone cubic (Fritsch–Carlson) in the
// variable u = r/(r+mu_hint); f(0) = 0 pinned, values clamped to [0,1].
struct ProfileParam {
  std::vector<double> radii;
  std::vector<double> values;
  double mu_hint = 1.0;

  RadialProfile profile() const;
  static ProfileParam bpst_knots(double mu, int interior_knots = 7);
  void clamp();
};

// Connection A_f = f(r) γ^{-1}dγ for an arbitrary radial profile.
Connection profile_connection(const RadialProfile& f);

struct OptimizeHistoryRow {
  int iteration;
  double H;
  double ode_residual;
  double step_norm;
};

struct OptimizeOptions {
  int max_sweeps = 60;
  double initial_step = 0.02;
  double min_step = 2e-5;
  int max_backtracks = 25;
};

struct OptimizeResult {
  ProfileParam profile;
  std::vector<OptimizeHistoryRow> history;
  bool stalled = false;
  double initial_residual = 0;
  double final_residual = 0;
  Complex final_H;
};

// Vacuum H(A) for an SO(4)-symmetric connection, by radial quadrature of the
// (verified radial) Lagrangian density: H = 2π² ∫ ρ³ l(ρ) dρ over
// ρ in [0, 2·radius] with 6·nodes_per_axis Gauss points.
double radial_vacuum_H(const Connection& A, const QuadratureSpec& quad);

// Derivative-free coordinate descent on Re H(A_f) over the interior knot
// values; H is non-increasing across accepted steps by construction. The
// objective is radial_vacuum_H, which resolves every knot radius (a tensor
// grid at desk-scale node counts never samples |z|^2 below ~2).
OptimizeResult optimize_profile(const ProfileParam& init, double mu_hint,
                                const QuadratureSpec& quad,
                                const OptimizeOptions& opts = {});

// RMS profile-ODE residual on a fixed log-spaced radius grid; the measure
// reported by the optimizer history.
double profile_residual_rms(const RadialProfile& f);

// Smooth bump exp(1/(|z|^2 − R^2)) supported in |z| < R, with exact
// derivatives; scalar-valued (1x1).
Coefficient bump_scalar(double R);

// Compactly supported skew-Hermitian connection: bump times seeded constant
// matrices, B = β − β*.
Connection random_bump_connection(Sampler& sampler, int n, double R);

// Compactly supported polynomial-times-bump form field of a given degree.
FormField random_bump_field(Sampler& sampler, int n, int degree, double R,
                            int max_power = 1);

}  // namespace ymforms
