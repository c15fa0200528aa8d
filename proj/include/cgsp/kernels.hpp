#pragma once

#include <memory>
#include <string>

#include "cgsp/metrics.hpp"
#include "cgsp/types.hpp"

namespace cgsp {

// Kernel families over feature points:
//   egk  exp(-d_E^2 / 2 sigma^2)
//   hgk  exp(-d_H^2 / 2 sigma^2)
//   elk  exp(-d_E / sigma)
//   hlk  exp(-d_H / sigma)
//   pk   (zn^H Hbar zm + c)^d
// plus a precomputed matrix handle.
struct KernelSpec {
    enum class Family { Egk, Hgk, Elk, Hlk, Pk, Precomputed };

    Family family = Family::Egk;
    double sigma = 1.0;  // gaussian/laplacian width, > 0
    double c = 0.0;      // pk offset, >= 0
    int degree = 1;      // pk exponent, >= 1
    MetricTensor metric; // hgk/hlk/pk
    std::shared_ptr<const ComplexMatrix> precomputed;
    std::string label;

    static KernelSpec egk(double sigma);
    static KernelSpec hgk(double sigma, const MetricTensor& metric);
    static KernelSpec elk(double sigma);
    static KernelSpec hlk(double sigma, const MetricTensor& metric);
    static KernelSpec pk(double c, int degree, const MetricTensor& metric);
    static KernelSpec from_matrix(const ComplexMatrix& k, const std::string& label = "precomputed");

    bool uses_features() const { return family != Family::Precomputed; }
};

// Colon-separated spec strings, e.g. "egk:sigma=0.5",
// "hgk:sigma=0.5:metric=kahler", "pk:c=10:d=8:metric=torus:1.5".
KernelSpec parse_kernel_spec(const std::string& text);

struct KernelMatrix {
    ComplexMatrix k;
    std::string label;

    Eigen::Index size() const { return k.rows(); }
    // Smallest eigenvalue relative to the largest; advisory PSD probe.
    double min_eigenvalue_ratio() const;
};

Complex kernel_eval(const KernelSpec& spec, const FeatureVector& zn, const FeatureVector& zm);

// Hermitian N x N Gram matrix; Gaussian/Laplacian diagonals are exactly one.
KernelMatrix kernel_matrix(const KernelSpec& spec, const FeatureSet& features);

// K + eps I.
KernelMatrix regularize_kernel(const KernelMatrix& k, double eps);

// <f, g>_H for f = K alpha, g = K beta.
Complex rkhs_inner(const KernelMatrix& k, const ComplexVector& alpha, const ComplexVector& beta);
double rkhs_norm_sq(const KernelMatrix& k, const ComplexVector& alpha);

}  // namespace cgsp
