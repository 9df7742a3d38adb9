#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ymforms/algebra.hpp"

namespace ymforms {

// z_k = x_{2k-2} + i x_{2k-1}
struct Point {
  Complex z1{0, 0}, z2{0, 0};

  double x0() const { return z1.real(); }
  double x1() const { return z1.imag(); }
  double x2() const { return z2.real(); }
  double x3() const { return z2.imag(); }
  double x(int s) const {
    switch (s) {
      case 0: return x0();
      case 1: return x1();
      case 2: return x2();
      default: return x3();
    }
  }
  static Point from_x(double a, double b, double c, double d) {
    return Point{Complex(a, b), Complex(c, d)};
  }
  // |z|^2 = |z1|^2 + |z2|^2
  double r2() const { return std::norm(z1) + std::norm(z2); }
};

inline Point operator+(const Point& a, const Point& b) {
  return Point{a.z1 + b.z1, a.z2 + b.z2};
}
inline Point operator*(double c, const Point& a) { return Point{c * a.z1, c * a.z2}; }

// Wirtinger derivatives: d/dz_k = (d/dx_{2k-2} - i d/dx_{2k-1})/2, and conjugates.
enum class Wirtinger : int { D1 = 0, D2 = 1, Db1 = 2, Db2 = 3 };

inline Wirtinger conjugate(Wirtinger w) {
  return Wirtinger((int(w) + 2) % 4);
}

// Cotangent generators in canonical order dz1 < dz2 < dz̄1 < dz̄2.
enum class Generator : int { Dz1 = 0, Dz2 = 1, Dzb1 = 2, Dzb2 = 3 };

inline Generator conjugate(Generator g) { return Generator((int(g) + 2) % 4); }

// The Wirtinger derivative that differentiates coefficients paired with a
// given generator in the exterior derivative (dz_k pairs with d/dz_k).
inline Wirtinger wirtinger_of(Generator g) { return Wirtinger(int(g)); }

// ---- basis multi-indices as 4-bit masks over the generators ----

using Mask = std::uint8_t;

inline int mask_degree(Mask m) { return __builtin_popcount(m); }

inline std::vector<Mask> basis_masks(int degree) {
  std::vector<Mask> out;
  for (Mask m = 0; m < 16; ++m)
    if (mask_degree(m) == degree) out.push_back(m);
  return out;
}

// Sign of sorting (sorted A)(sorted B) into canonical order; 0 if they overlap.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int ga = 0; ga < 4; ++ga) {
    if (!(a >> ga & 1)) continue;
    for (int gb = 0; gb < ga; ++gb)
      if (b >> gb & 1) ++inversions;
  }
  return inversions % 2 ? -1 : 1;
}

inline Mask conj_mask(Mask m) {
  return Mask(((m & 0b0011) << 2) | ((m & 0b1100) >> 2));
}

// Sign from re-sorting the conjugated generator sequence (positions kept,
// each generator replaced by its bar) into canonical order.
inline int conj_sort_sign(Mask m) {
  std::array<int, 4> seq{};
  int p = 0;
  for (int g = 0; g < 4; ++g)
    if (m >> g & 1) seq[p++] = (g + 2) % 4;
  int inversions = 0;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (seq[i] > seq[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

}  // namespace ymforms
