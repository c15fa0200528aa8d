#pragma once

#include <string>
#include <vector>

#include "cgsp/graph.hpp"
#include "cgsp/kernels.hpp"
#include "cgsp/linalg.hpp"
#include "cgsp/types.hpp"

namespace cgsp {

// Laplacian eigendecomposition plus the fractional basis U^a. Eigenvalues are
// descending; lambda_a holds lambda^a with 0^a = 0 and small negative
// eigenvalues clamped to zero. uah is adjoint(ua) so transform round trips
// are exact.
struct GraphSpectrum {
    EigenDecomposition eig;
    double a = 1.0;
    ComplexMatrix ua;
    ComplexMatrix uah;
    RealVector lambda_a;
    bool normalized = false;

    int size() const { return static_cast<int>(eig.eigenvalues.size()); }
};

GraphSpectrum spectrum(const Graph& g, double a, bool normalized = false);

// fhat = (U^H)^a f and its inverse.
ComplexVector gfrft(const GraphSpectrum& s, const ComplexVector& f);
ComplexVector inverse_gfrft(const GraphSpectrum& s, const ComplexVector& fhat);

// real(f^H U^a Lambda^a (U^a)^H f); at a = 1 equals the Dirichlet sum
// (1/2) sum w_nm |f_n - f_m|^2.
double smoothness(const GraphSpectrum& s, const ComplexVector& f);

// Projector onto spectral band F in the fractional basis: U^a Sigma (U^a)^H.
ComplexMatrix band_projector(const GraphSpectrum& s, const IndexSet& band);

// Orthogonal projection of f onto the band.
ComplexVector bandlimit_project(const GraphSpectrum& s, const IndexSet& band,
                                const ComplexVector& f);

struct LocalizationOps {
    RealVector vertex_mask;  // diagonal of P
    ComplexMatrix ba;        // band projector
    IndexSet vertices;
    IndexSet band;
};

LocalizationOps localization_ops(const GraphSpectrum& s, const IndexSet& vertices,
                                 const IndexSet& band);

struct LocalizationCheck {
    double lambda_max = 0.0;
    bool localized = false;
    ComplexVector maximizer;  // top eigenvector of B^a P B^a
};

// lambda_max(B^a P B^a) with perfect localization at lambda_max = 1 (1e-6).
LocalizationCheck perfect_localization_check(const LocalizationOps& ops);

// Spectral maps r(lambda^a) used as reconstruction priors. Bandlimited is
// index-based: r = 1/mu inside the band, mu outside.
struct SpectralMap {
    enum class Kind { Diffusion, RandomWalk, LaplacianReg, Bandlimited };

    Kind kind = Kind::Diffusion;
    double sigma2 = 1.0;  // diffusion / laplacian-reg
    double b = 2.0;       // random walk shift
    int p = 1;            // random walk power
    double mu = 1e-2;     // bandlimited out-of-band weight
    IndexSet band;        // bandlimited support (spectral indices)
    std::string label;

    static SpectralMap diffusion(double sigma2);
    static SpectralMap random_walk(double b, int p);
    static SpectralMap laplacian_reg(double sigma2);
    static SpectralMap bandlimited(const IndexSet& band, double mu, int n);

    bool in_band(int k) const;
    double value(int k, double lambda_a) const;
};

// Graph kernel from a spectral map: K = U^a diag(g) (U^a)^H. For diffusion,
// random-walk and laplacian-reg priors the kernel eigenvalue is 1/r(lambda^a)
// (with r = 0 mapped to 0); the bandlimited map already is the kernel
// spectrum and is used directly.
KernelMatrix glk(const GraphSpectrum& s, const SpectralMap& map);

}  // namespace cgsp
