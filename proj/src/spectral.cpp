#include "cgsp/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace cgsp {

namespace {

void check_indices(const IndexSet& idx, int n, const char* what) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int i : idx) {
        if (i < 0 || i >= n) {
            throw_error(ErrorCode::IndexOutOfRange,
                        std::string(what) + " index " + std::to_string(i) + " outside [0, " +
                            std::to_string(n) + ")");
        }
        if (seen[static_cast<std::size_t>(i)]) {
            throw_error(ErrorCode::IndexOutOfRange,
                        std::string(what) + " index " + std::to_string(i) + " repeated");
        }
        seen[static_cast<std::size_t>(i)] = true;
    }
}

}  // namespace

GraphSpectrum spectrum(const Graph& g, double a, bool normalized) {
    if (g.size() == 0) throw_error(ErrorCode::EmptyGraph, "spectrum of an empty graph");
    if (!(a >= 0.0)) throw_error(ErrorCode::OutOfDomain, "fractional order must be >= 0");
    const RealMatrix& l = normalized ? g.laplacian_norm : g.laplacian;

    GraphSpectrum s;
    s.a = a;
    s.normalized = normalized;
    s.eig = eig_hermitian(l.cast<Complex>());
    const Eigen::Index n = s.eig.eigenvalues.size();
    const double lmax = std::max(s.eig.eigenvalues(0), 0.0);
    if (s.eig.eigenvalues(n - 1) < -1e-8 * std::max(lmax, 1.0)) {
        throw_error(ErrorCode::NotPositiveDefinite, "laplacian spectrum has negative eigenvalues");
    }
    s.lambda_a.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lam = std::max(s.eig.eigenvalues(k), 0.0);
        s.lambda_a(k) = lam == 0.0 ? 0.0 : std::pow(lam, a);
    }
    s.ua = fractional_unitary_power(s.eig.vectors, a);
    s.uah = s.ua.adjoint();
    return s;
}

ComplexVector gfrft(const GraphSpectrum& s, const ComplexVector& f) {
    if (f.size() != s.ua.rows()) {
        throw_error(ErrorCode::DimensionMismatch, "signal length does not match spectrum");
    }
    return s.uah * f;
}

ComplexVector inverse_gfrft(const GraphSpectrum& s, const ComplexVector& fhat) {
    if (fhat.size() != s.ua.rows()) {
        throw_error(ErrorCode::DimensionMismatch, "signal length does not match spectrum");
    }
    return s.ua * fhat;
}

double smoothness(const GraphSpectrum& s, const ComplexVector& f) {
    const ComplexVector fhat = gfrft(s, f);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < fhat.size(); ++k) {
        acc += s.lambda_a(k) * std::norm(fhat(k));
    }
    return acc;
}

ComplexMatrix band_projector(const GraphSpectrum& s, const IndexSet& band) {
    const int n = s.size();
    check_indices(band, n, "band");
    RealVector sigma = RealVector::Zero(n);
    for (int k : band) sigma(k) = 1.0;
    return s.ua * sigma.asDiagonal() * s.uah;
}

ComplexVector bandlimit_project(const GraphSpectrum& s, const IndexSet& band,
                                const ComplexVector& f) {
    const int n = s.size();
    check_indices(band, n, "band");
    if (f.size() != n) {
        throw_error(ErrorCode::DimensionMismatch, "signal length does not match spectrum");
    }
    ComplexVector fhat = gfrft(s, f);
    RealVector sigma = RealVector::Zero(n);
    for (int k : band) sigma(k) = 1.0;
    fhat.array() *= sigma.array().cast<Complex>();
    return inverse_gfrft(s, fhat);
}

LocalizationOps localization_ops(const GraphSpectrum& s, const IndexSet& vertices,
                                 const IndexSet& band) {
    const int n = s.size();
    check_indices(vertices, n, "vertex");
    check_indices(band, n, "band");
    LocalizationOps ops;
    ops.vertices = vertices;
    ops.band = band;
    ops.vertex_mask = RealVector::Zero(n);
    for (int i : vertices) ops.vertex_mask(i) = 1.0;
    ops.ba = band_projector(s, band);
    return ops;
}

LocalizationCheck perfect_localization_check(const LocalizationOps& ops) {
    const ComplexMatrix t = ops.ba * ops.vertex_mask.asDiagonal() * ops.ba;
    const EigenDecomposition dec = eig_hermitian(t);
    LocalizationCheck out;
    out.lambda_max = dec.eigenvalues(0);
    out.localized = std::abs(out.lambda_max - 1.0) <= 1e-6;
    out.maximizer = dec.vectors.col(0);
    return out;
}

SpectralMap SpectralMap::diffusion(double sigma2) {
    if (!(sigma2 > 0.0)) throw_error(ErrorCode::InvalidSpec, "diffusion needs sigma2 > 0");
    SpectralMap m;
    m.kind = Kind::Diffusion;
    m.sigma2 = sigma2;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "glk:diffusion:sigma2=%g", sigma2);
    m.label = buf;
    return m;
}

SpectralMap SpectralMap::random_walk(double b, int p) {
    if (!(b >= 2.0)) throw_error(ErrorCode::InvalidSpec, "random walk needs b >= 2");
    if (p < 1) throw_error(ErrorCode::InvalidSpec, "random walk needs p >= 1");
    SpectralMap m;
    m.kind = Kind::RandomWalk;
    m.b = b;
    m.p = p;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "glk:randomwalk:b=%g:p=%d", b, p);
    m.label = buf;
    return m;
}

SpectralMap SpectralMap::laplacian_reg(double sigma2) {
    if (!(sigma2 > 0.0)) throw_error(ErrorCode::InvalidSpec, "laplacian reg needs sigma2 > 0");
    SpectralMap m;
    m.kind = Kind::LaplacianReg;
    m.sigma2 = sigma2;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "glk:lapreg:sigma2=%g", sigma2);
    m.label = buf;
    return m;
}

SpectralMap SpectralMap::bandlimited(const IndexSet& band, double mu, int n) {
    if (band.empty()) throw_error(ErrorCode::EmptyBandSet, "bandlimited map needs a band");
    if (!(mu > 0.0)) throw_error(ErrorCode::InvalidSpec, "bandlimited map needs mu > 0");
    check_indices(band, n, "band");
    SpectralMap m;
    m.kind = Kind::Bandlimited;
    m.band = band;
    m.mu = mu;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "gbk:F=%zu:mu=%g", band.size(), mu);
    m.label = buf;
    return m;
}

bool SpectralMap::in_band(int k) const {
    return std::find(band.begin(), band.end(), k) != band.end();
}

double SpectralMap::value(int k, double lambda_a) const {
    switch (kind) {
        case Kind::Diffusion:
            return std::exp(-sigma2 * lambda_a / 2.0);
        case Kind::RandomWalk: {
            const double base = b - lambda_a;
            if (!(base > 0.0)) {
                throw_error(ErrorCode::InvalidMapDomain,
                            "random walk map needs b > lambda^a, got lambda^a = " +
                                std::to_string(lambda_a));
            }
            return std::pow(base, -p);
        }
        case Kind::LaplacianReg:
            return 1.0 + sigma2 * lambda_a;
        case Kind::Bandlimited:
            return in_band(k) ? 1.0 / mu : mu;
    }
    throw_error(ErrorCode::InvalidSpec, "unreachable spectral map kind");
}

KernelMatrix glk(const GraphSpectrum& s, const SpectralMap& map) {
    const int n = s.size();
    if (map.kind == SpectralMap::Kind::Bandlimited) check_indices(map.band, n, "band");
    RealVector g(n);
    for (int k = 0; k < n; ++k) {
        const double r = map.value(k, s.lambda_a(k));
        if (map.kind == SpectralMap::Kind::Bandlimited) {
            g(k) = r;
        } else {
            g(k) = r == 0.0 ? 0.0 : 1.0 / r;
        }
    }
    ComplexMatrix km = s.ua * g.asDiagonal() * s.uah;
    // Hermitian up to rounding by construction; symmetrize so downstream
    // hermiticity checks see an exact fixed point.
    km = 0.5 * (km + km.adjoint()).eval();
    ensure_finite(km, "graph kernel");
    return KernelMatrix{std::move(km), map.label};
}

}  // namespace cgsp
