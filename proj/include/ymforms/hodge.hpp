#pragma once

#include <functional>
#include <vector>

#include "ymforms/forms.hpp"

namespace ymforms {

enum class MetricKind { Euclidean, Minkowski };

// Diagonal metric on R^4 under z_k = x_{2k-2} + i x_{2k-1}. The Minkowski
// signature is diag(1,-1,-1,-1); this is the unique choice (together with the
// volume orientation below) reproducing the displayed star tables.
struct Metric {
  MetricKind kind = MetricKind::Euclidean;
  Eigen::Vector4d g{1, 1, 1, 1};  // diagonal entries; inverse is the same

  static Metric euclidean() { return {}; }
  static Metric minkowski() {
    return Metric{MetricKind::Minkowski, Eigen::Vector4d(1, -1, -1, -1)};
  }
};

// <alpha dx_s, beta dx_t> = alpha conj(beta) g^{st}, extended to the complex
// generators by expanding dz_k = dx_{2k-2} + i dx_{2k-1}.
Complex metric_pairing(Generator a, Generator b, const Metric& m);

// Gram pairing of basis p-forms: det of the generator pairing matrix.
Complex basis_pairing(Mask a, Mask b, const Metric& m);

// Hodge star on basis forms, defined by e ∧ ★b = <e, b̄> vol for all basis
// p-forms e and solved degree by degree from the wedge pairing.
class StarTable {
 public:
  struct Entry {
    Mask target;
    Complex factor;
  };

  MetricKind kind() const { return kind_; }
  // vol = vol_coeff * dz1∧dz2∧dz̄1∧dz̄2
  Complex vol_coeff() const { return vol_coeff_; }
  const std::vector<Entry>& of(Mask m) const { return map_[m]; }

  FormValue apply(const FormValue& v) const;
  FormField apply(const FormField& f) const;

  friend StarTable build_star_table(const Metric& m);

 private:
  MetricKind kind_ = MetricKind::Euclidean;
  Complex vol_coeff_{0.25, 0};
  std::array<std::vector<Entry>, 16> map_;
};

StarTable build_star_table(const Metric& m);

// Cached per-metric table.
const StarTable& star_table(const Metric& m);

inline FormValue star(const FormValue& v, const Metric& m) {
  return star_table(m).apply(v);
}
inline FormField star(const FormField& f, const Metric& m) {
  return star_table(m).apply(f);
}

enum class DualityClass { SD, ASD, Mixed, Zero };

const char* to_string(DualityClass c);

// SD iff ★ω = λω with λ = +1 (Euclidean) or +i (Minkowski); ASD with -λ.
DualityClass classify_duality(const FormValue& omega, const Metric& m,
                              double tol = 1e-10);

// <mu,eta> with <mu,eta> vol = Tr(mu ∧ ★(eta*)).
Complex pointwise_inner(const FormValue& mu, const FormValue& eta, const Metric& m,
                        TraceKind kind = TraceKind::Matrix);

struct QuadratureSpec {
  double radius = 6.0;
  int nodes_per_axis = 16;
  enum class Rule { Gauss, Midpoint } rule = Rule::Gauss;
};

// Tensor-product nodes over [-R, R]^4.
struct QuadratureGrid {
  std::vector<double> nodes;    // 1d nodes
  std::vector<double> weights;  // 1d weights
};

QuadratureGrid quadrature_1d(const QuadratureSpec& q);

// Integral over [-R,R]^4 of a pointwise function against d^4x (= vol_g for
// both metrics here).
Complex integrate(const QuadratureSpec& q,
                  const std::function<Complex(const Point&)>& f);

// (mu, eta) = ∫ Tr(mu ∧ ★(eta*))
Complex global_inner(const FormField& mu, const FormField& eta, const Metric& m,
                     const QuadratureSpec& quad, TraceKind kind = TraceKind::Matrix);

}  // namespace ymforms
