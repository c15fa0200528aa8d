#pragma once

#include <cstdint>

#include "cgsp/kernels.hpp"
#include "cgsp/spectral.hpp"
#include "cgsp/types.hpp"

namespace cgsp {

// Vertex sampling plan: which indices of a length-n signal are observed, the
// complex noise level, and the seed for the noise draw.
struct SamplingPlan {
    int n = 0;
    IndexSet samples;        // unique, in [0, n)
    double noise_std = 0.0;  // total std per observation; re/im get std/sqrt(2)
    std::uint64_t seed = 0;

    int sample_count() const { return static_cast<int>(samples.size()); }
    void validate() const;

    // Uniform sample without replacement of size m; the selection stream and
    // the noise stream are derived from the same seed.
    static SamplingPlan uniform(int n, int m, double noise_std, std::uint64_t seed);
};

// y_i = f[S_i] + noise. noise_std = 0 adds nothing and draws nothing.
ComplexVector sample(const SamplingPlan& plan, const ComplexVector& f);

struct KrrResult {
    ComplexVector f_opt;  // length n
    ComplexVector beta;   // length |S|
};

// Kernel ridge regression: beta = (K_S + gamma I)^{-1} y, f = K[:, S] beta.
KrrResult krr(const KernelMatrix& k, const SamplingPlan& plan, const ComplexVector& y,
              double gamma);

// (1/|S|)(||y - f_S||^2 + gamma real(f^H K^+ f)); the krr closed form is the
// exact minimizer over span(K).
double krr_objective(const KernelMatrix& k, const SamplingPlan& plan, const ComplexVector& y,
                     double gamma, const ComplexVector& f);

// Bandlimited ridge in the fractional basis: solve for in-band coefficients
// with per-coefficient weight gamma / mu and expand with U^a_F.
ComplexVector bandlimited_ridge(const GraphSpectrum& s, const IndexSet& band, double mu,
                                double gamma, const SamplingPlan& plan, const ComplexVector& y);

// ||f_hat - f_ref||^2 / ||f_ref||^2.
double nmse(const ComplexVector& f_hat, const ComplexVector& f_ref);

}  // namespace cgsp
