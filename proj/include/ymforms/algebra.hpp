#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ymforms {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Trace functional on M_n(C): the unnormalized matrix trace, or the tracial
// state Tr/n with Tr(I) = 1.
enum class TraceKind { Matrix, State };

inline CMatrix identity(int n) { return CMatrix::Identity(n, n); }

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

inline Complex trace(const CMatrix& a, TraceKind kind = TraceKind::Matrix) {
  Complex t = a.trace();
  return kind == TraceKind::State ? t / double(a.rows()) : t;
}

// <a,b> = Tr(a b*)
inline Complex inner(const CMatrix& a, const CMatrix& b,
                     TraceKind kind = TraceKind::Matrix) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("inner: dimension mismatch");
  return trace((a * b.adjoint()).eval(), kind);
}

inline double fnorm(const CMatrix& a) { return a.norm(); }

// a*a = aa* up to tol relative to max(1, |a|_F^2)
inline bool is_normal(const CMatrix& a, double tol = 1e-10) {
  double gap = (a * a.adjoint() - a.adjoint() * a).norm();
  return gap <= tol * std::max(1.0, a.squaredNorm());
}

inline bool is_unitary(const CMatrix& a, double tol = 1e-10) {
  return (a.adjoint() * a - identity(int(a.rows()))).norm() <= tol;
}

// Pauli matrices as displayed in the BPST construction.
inline CMatrix pauli(int j) {
  CMatrix s(2, 2);
  const Complex i(0, 1);
  switch (j) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: j must be 1, 2, or 3");
  }
  return s;
}

}  // namespace ymforms
