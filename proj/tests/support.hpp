#pragma once

#include <doctest.h>

#include "ymforms/variational.hpp"

namespace ymtest {

using namespace ymforms;

inline bool approx(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
inline bool approx(Complex a, Complex b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
inline bool near(double a, double tol) { return std::abs(a) <= tol; }

// ---- real-coordinate oracles, independent of the library's derivatives ----

// central difference in a single real coordinate
template <typename F>
Complex real_partial_fd(F&& f, const Point& z, int s, double h = 1e-6) {
  double x[4] = {z.x0(), z.x1(), z.x2(), z.x3()};
  x[s] += h;
  Complex up = f(Point::from_x(x[0], x[1], x[2], x[3]));
  x[s] -= 2 * h;
  Complex dn = f(Point::from_x(x[0], x[1], x[2], x[3]));
  return (up - dn) / (2 * h);
}

// Wirtinger derivative assembled from real partials: d/dz_k = (d_x - i d_y)/2
template <typename F>
Complex wirtinger_fd(F&& f, const Point& z, Wirtinger w, double h = 1e-6) {
  int k = int(w) % 2;
  Complex ifac = int(w) < 2 ? Complex(0, -0.5) : Complex(0, 0.5);
  return 0.5 * real_partial_fd(f, z, 2 * k, h) +
         ifac * real_partial_fd(f, z, 2 * k + 1, h);
}

// metric pairing oracle by direct expansion over the real cotangent basis
inline Complex pairing_oracle(Generator a, Generator b, const Metric& m) {
  auto comps = [](Generator g) -> std::array<Complex, 4> {
    const Complex i(0, 1);
    switch (g) {
      case Generator::Dz1: return {1, i, 0, 0};
      case Generator::Dz2: return {0, 0, 1, i};
      case Generator::Dzb1: return {1, -i, 0, 0};
      default: return {0, 0, 1, -i};
    }
  };
  auto ca = comps(a), cb = comps(b);
  Complex acc(0, 0);
  for (int s = 0; s < 4; ++s) acc += ca[s] * std::conj(cb[s]) * m.g[s];
  return acc;
}

// ---- standalone scalar form engine over the paper's displayed star tables --

// scalar-valued forms: mask -> function; derivatives by finite differences;
// the Euclidean star is the hard-coded displayed table, not the solved one.
struct ScalarForm {
  std::map<int, std::function<Complex(const Point&)>> c;

  static int sign_wedge(int a, int b) { return wedge_sign(Mask(a), Mask(b)); }

  ScalarForm d() const {
    ScalarForm out;
    for (const auto& [mask, f] : c) {
      for (int g = 0; g < 4; ++g) {
        int s = sign_wedge(1 << g, mask);
        if (!s) continue;
        auto fn = f;
        Wirtinger w = Wirtinger(g);
        auto add = [fn, w, s](const Point& z) {
          return double(s) * wirtinger_fd(fn, z, w, 1e-5);
        };
        int target = mask | (1 << g);
        if (auto it = out.c.find(target); it != out.c.end()) {
          auto prev = it->second;
          out.c[target] = [prev, add](const Point& z) { return prev(z) + add(z); };
        } else {
          out.c[target] = add;
        }
      }
    }
    return out;
  }

  // Euclidean star from the displayed tables (1-, 2-, 3-forms and volume)
  ScalarForm star_euclid() const {
    static const std::map<int, std::pair<int, double>> table = {
        {0b0000, {0b1111, 0.25}}, {0b0001, {0b1011, 0.5}},  {0b0010, {0b0111, -0.5}},
        {0b0100, {0b1110, 0.5}},  {0b1000, {0b1101, -0.5}}, {0b0011, {0b0011, 1}},
        {0b1100, {0b1100, 1}},    {0b0101, {0b1010, 1}},    {0b1010, {0b0101, 1}},
        {0b1001, {0b1001, -1}},   {0b0110, {0b0110, -1}},   {0b0111, {0b0010, 2}},
        {0b1011, {0b0001, -2}},   {0b1101, {0b1000, 2}},    {0b1110, {0b0100, -2}},
        {0b1111, {0b0000, 4}}};
    ScalarForm out;
    for (const auto& [mask, f] : c) {
      auto [target, factor] = table.at(mask);
      auto fn = f;
      double fac = factor;
      out.c[target] = [fn, fac](const Point& z) { return fac * fn(z); };
    }
    return out;
  }

  Complex eval(int mask, const Point& z) const {
    auto it = c.find(mask);
    return it == c.end() ? Complex(0, 0) : it->second(z);
  }
};

}  // namespace ymtest
