#pragma once

#include <random>

#include "ymforms/point.hpp"

namespace ymforms {

// Deterministic sampling utilities; every randomized check records its seed.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  Complex complex_in_disk(double radius) {
    while (true) {
      double re = uniform(-radius, radius), im = uniform(-radius, radius);
      if (re * re + im * im <= radius * radius) return {re, im};
    }
  }
  // point in the polydisk |z_i| <= radius
  Point point(double radius = 2.0) {
    return Point{complex_in_disk(radius), complex_in_disk(radius)};
  }
  std::vector<Point> points(int count, double radius = 2.0,
                            double min_abs = 0.0) {
    std::vector<Point> out;
    while (int(out.size()) < count) {
      Point z = point(radius);
      if (std::sqrt(z.r2()) >= min_abs) out.push_back(z);
    }
    return out;
  }

  CMatrix matrix(int n, double scale = 1.0) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = Complex(uniform(-scale, scale), uniform(-scale, scale));
    return m;
  }
  CMatrix unitary(int n) {
    Eigen::HouseholderQR<CMatrix> qr(matrix(n));
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      Complex d = r(i, i);
      q.col(i) *= d == Complex(0, 0) ? Complex(1, 0) : d / std::abs(d);
    }
    return q;
  }
  // U diag(lambda) U*
  CMatrix normal_matrix(int n, double scale = 1.0) {
    CMatrix u = unitary(n);
    CMatrix d = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      d(i, i) = Complex(uniform(-scale, scale), uniform(-scale, scale));
    return u * d * u.adjoint();
  }
  CMatrix hermitian(int n, double scale = 1.0) {
    CMatrix m = matrix(n, scale);
    return ((m + m.adjoint()) / 2).eval();
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ymforms
