#pragma once

#include <cstdint>
#include <string>

#include "cgsp/graph.hpp"
#include "cgsp/spectral.hpp"
#include "cgsp/types.hpp"

namespace cgsp {

// Synthetic feature/graph generators. All randomness is seeded; every
// shape constant is a named field.
struct SyntheticGraphSpec {
    enum class Kind { TwoMoons, SwissRoll, Community, Chirp3d, Line1d };

    Kind kind = Kind::SwissRoll;
    int n = 200;
    std::uint64_t seed = 0;

    int dim = 2;  // line1d feature dimension

    double moon_offset = 0.5;  // vertical gap between the moons
    double moon_noise = 0.05;  // gaussian jitter on moon points

    double roll_height = 10.0;       // swiss roll extrusion
    bool roll_normalize = true;      // scale coordinates into [-1, 1]

    int communities = 4;          // community count
    double community_std = 0.1;   // point scatter around each community center
    double p_in = 0.3;            // planted partition probabilities
    double p_out = 0.01;

    double chirp_rate = 0.1;  // quadratic phase rate

    // "swiss_roll:n=200:seed=7", "line1d:n=1000:d=2", "community:n=200:c=4", ...
    static SyntheticGraphSpec from_string(const std::string& text);
    std::string to_string() const;
};

// One complex feature point per vertex:
//   line1d     z^i = x + i_im cos(2 pi (i/D) x), x on a uniform grid of [-1, 1]
//   chirp3d    unit-modulus quadratic-phase components offset by pi/3, 2pi/3
//   two_moons  interleaved noisy semicircles in C (dim 1, re/im = plane)
//   swiss_roll (t cos t, h, t sin t), t in [1.5 pi, 4.5 pi]
//   community  points scattered around community centers on the unit circle
FeatureSet gen_features(const SyntheticGraphSpec& spec);

// Experiment graph for a generator: community uses the planted partition
// directly, everything else builds a kernel similarity graph.
Graph gen_graph(const SyntheticGraphSpec& spec, const KernelSpec& kernel,
                const SparsifyRule& rule = SparsifyRule{});

// f = B^a (10 U_1 + 5 U_2 + 20 U_3): a fixed in-band combination of the top
// three basis columns, projected so bandlimit holds for any a. |band| >= 3.
ComplexVector gen_bandlimited_signal(const GraphSpectrum& s, const IndexSet& band);

// f = K alpha.
ComplexVector gen_signal_from_kernel(const KernelMatrix& k, const ComplexVector& alpha);
// alpha drawn i.i.d. standard complex normal from the seed.
ComplexVector gen_signal_from_kernel(const KernelMatrix& k, std::uint64_t seed);

// First feature component per vertex (the chirp reconstruction target).
ComplexVector feature_component(const FeatureSet& features, int component);

// ---- magnitude distribution fitting ----

struct RayleighFit {
    double sigma = 0.0;  // MLE sqrt(sum x^2 / 2n)
    int n = 0;
};

struct WeibullFit {
    double shape = 0.0;  // k
    double scale = 0.0;  // lambda
    int n = 0;
    int iterations = 0;
};

// MLE fits over positive magnitudes. Fewer than 10 samples reports
// InsufficientData; degenerate (constant) samples report FitDiverged.
RayleighFit fit_rayleigh(const RealVector& magnitudes);
WeibullFit fit_weibull(const RealVector& magnitudes, double tol = 1e-8, int max_iters = 100);

double rayleigh_pdf(const RayleighFit& fit, double x);
double rayleigh_cdf(const RayleighFit& fit, double x);
double weibull_pdf(const WeibullFit& fit, double x);
double weibull_cdf(const WeibullFit& fit, double x);

// Inverse-CDF samplers for synthetic fitting data.
RealVector sample_rayleigh(double sigma, int n, std::uint64_t seed);
RealVector sample_weibull(double shape, double scale, int n, std::uint64_t seed);

struct EmpiricalDistribution {
    RealVector sorted;  // ascending

    // Right-continuous empirical CDF.
    double ecdf(double x) const;

    // Freedman-Diaconis histogram density: bin width 2 IQR / n^(1/3); falls
    // back to a single bin when the data are flat.
    struct Histogram {
        double lo = 0.0;
        double width = 0.0;
        RealVector density;
        double value(double x) const;
    };
    Histogram histogram() const;

    static EmpiricalDistribution from(const RealVector& values);
};

}  // namespace cgsp
