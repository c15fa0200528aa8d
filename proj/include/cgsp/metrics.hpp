#pragma once

#include <string>

#include "cgsp/types.hpp"

namespace cgsp {

// Hermitian metric tensor on a chart of C^D. Each kind yields an HPD matrix
// H(z) with entries h_{i jbar}:
//   euclidean      delta_ij
//   torus:r        delta_ij * r^{2(i-1)}          (i = 1..D)
//   kahler         delta_ij / (1 + |z|^2)^2
//   fubini-study   delta_ij / (1 + |z|^2) - z_i conj(z_j) / (1 + |z|^2)^2
//   poincare       4 delta_ij / (1 - |z|^2)^2     (needs |z|^2 < 1)
class MetricTensor {
  public:
    enum class Kind { Euclidean, Torus, Kahler, FubiniStudy, Poincare };

    MetricTensor() = default;
    explicit MetricTensor(Kind kind, double torus_r = 1.0);

    // Accepts "euclidean", "torus:r", "kahler", "fubini-study", "poincare".
    static MetricTensor from_string(const std::string& name);

    Kind kind() const { return kind_; }
    double torus_r() const { return torus_r_; }
    std::string to_string() const;

  private:
    Kind kind_ = Kind::Euclidean;
    double torus_r_ = 1.0;
};

// H(z) as a dense D x D matrix; throws OutOfDomain when z leaves the chart.
ComplexMatrix metric_at(const MetricTensor& metric, const FeatureVector& z);

// Symmetrized tensor (H(z_n) + H(z_m)) / 2 used by pairwise quantities.
ComplexMatrix mean_metric(const MetricTensor& metric, const FeatureVector& zn,
                          const FeatureVector& zm);

double dist_euclidean(const FeatureVector& zn, const FeatureVector& zm);

// sqrt(delta^H Hbar delta) with delta = zn - zm and Hbar the symmetrized
// tensor; real by hermiticity, clamped at zero against rounding.
double dist_hermitian(const MetricTensor& metric, const FeatureVector& zn,
                      const FeatureVector& zm);

}  // namespace cgsp
