#include "cgsp/reconstruct.hpp"

#include <cmath>

#include "cgsp/linalg.hpp"
#include "cgsp/rng.hpp"

namespace cgsp {

void SamplingPlan::validate() const {
    if (n <= 0) throw_error(ErrorCode::EmptyGraph, "sampling plan needs n > 0");
    if (samples.empty()) throw_error(ErrorCode::IndexOutOfRange, "sampling plan needs |S| >= 1");
    if (static_cast<int>(samples.size()) > n) {
        throw_error(ErrorCode::IndexOutOfRange, "sampling plan has |S| > n");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int i : samples) {
        if (i < 0 || i >= n) {
            throw_error(ErrorCode::IndexOutOfRange,
                        "sample index " + std::to_string(i) + " outside [0, " +
                            std::to_string(n) + ")");
        }
        if (seen[static_cast<std::size_t>(i)]) {
            throw_error(ErrorCode::IndexOutOfRange,
                        "sample index " + std::to_string(i) + " repeated");
        }
        seen[static_cast<std::size_t>(i)] = true;
    }
    if (!(noise_std >= 0.0)) throw_error(ErrorCode::OutOfDomain, "noise_std must be >= 0");
}

SamplingPlan SamplingPlan::uniform(int n, int m, double noise_std, std::uint64_t seed) {
    SamplingPlan plan;
    plan.n = n;
    plan.noise_std = noise_std;
    plan.seed = derive_seed(seed, {0x6e6f69ULL});
    Rng rng(derive_seed(seed, {0x73656cULL}));
    plan.samples = rng.sample_without_replacement(n, m);
    plan.validate();
    return plan;
}

ComplexVector sample(const SamplingPlan& plan, const ComplexVector& f) {
    plan.validate();
    if (f.size() != plan.n) {
        throw_error(ErrorCode::DimensionMismatch, "signal length does not match plan");
    }
    const int m = plan.sample_count();
    ComplexVector y(m);
    for (int i = 0; i < m; ++i) y(i) = f(plan.samples[static_cast<std::size_t>(i)]);
    if (plan.noise_std > 0.0) {
        Rng rng(plan.seed);
        for (int i = 0; i < m; ++i) y(i) += plan.noise_std * rng.complex_normal();
    }
    return y;
}

namespace {

ComplexMatrix restrict_rows_cols(const ComplexMatrix& k, const IndexSet& s) {
    const int m = static_cast<int>(s.size());
    ComplexMatrix out(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            out(i, j) = k(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

ComplexMatrix restrict_cols(const ComplexMatrix& k, const IndexSet& s) {
    ComplexMatrix out(k.rows(), static_cast<Eigen::Index>(s.size()));
    for (std::size_t j = 0; j < s.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = k.col(s[j]);
    }
    return out;
}

}  // namespace

KrrResult krr(const KernelMatrix& k, const SamplingPlan& plan, const ComplexVector& y,
              double gamma) {
    plan.validate();
    if (k.k.rows() != plan.n) {
        throw_error(ErrorCode::DimensionMismatch, "kernel size does not match plan");
    }
    if (y.size() != plan.sample_count()) {
        throw_error(ErrorCode::DimensionMismatch, "observation length does not match plan");
    }
    if (gamma < 0.0) throw_error(ErrorCode::OutOfDomain, "gamma must be >= 0");

    ComplexMatrix ks = restrict_rows_cols(k.k, plan.samples);
    ks.diagonal().array() += Complex(gamma, 0.0);
    KrrResult out;
    try {
        out.beta = solve_hpd(ks, y);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotPositiveDefinite) throw;
        // Indefinite kernels (pk, Hermitian-metric families) still define the
        // closed form as long as K_S + gamma I is invertible.
        out.beta = Eigen::PartialPivLU<ComplexMatrix>(ks).solve(y);
        const double scale = ks.cwiseAbs().maxCoeff() * out.beta.norm() + y.norm();
        if (!out.beta.allFinite() || (ks * out.beta - y).norm() > 1e-8 * scale) {
            throw_error(ErrorCode::SingularSystem, "regularized kernel block is not invertible");
        }
    }
    out.f_opt = restrict_cols(k.k, plan.samples) * out.beta;
    ensure_finite(out.f_opt, "krr output");
    return out;
}

double krr_objective(const KernelMatrix& k, const SamplingPlan& plan, const ComplexVector& y,
                     double gamma, const ComplexVector& f) {
    plan.validate();
    if (f.size() != plan.n) {
        throw_error(ErrorCode::DimensionMismatch, "candidate length does not match plan");
    }
    if (y.size() != plan.sample_count()) {
        throw_error(ErrorCode::DimensionMismatch, "observation length does not match plan");
    }
    const int m = plan.sample_count();
    double loss = 0.0;
    for (int i = 0; i < m; ++i) {
        loss += std::norm(y(i) - f(plan.samples[static_cast<std::size_t>(i)]));
    }
    loss /= static_cast<double>(m);
    const ComplexMatrix kp = pseudo_inverse(k.k);
    const double penalty = std::real(f.dot(kp * f));
    return loss + gamma * penalty / static_cast<double>(m);
}

ComplexVector bandlimited_ridge(const GraphSpectrum& s, const IndexSet& band, double mu,
                                double gamma, const SamplingPlan& plan, const ComplexVector& y) {
    plan.validate();
    if (s.size() != plan.n) {
        throw_error(ErrorCode::DimensionMismatch, "spectrum size does not match plan");
    }
    if (y.size() != plan.sample_count()) {
        throw_error(ErrorCode::DimensionMismatch, "observation length does not match plan");
    }
    if (band.empty()) throw_error(ErrorCode::EmptyBandSet, "bandlimited ridge needs a band");
    if (!(mu > 0.0)) throw_error(ErrorCode::InvalidSpec, "mu must be > 0");
    if (gamma < 0.0) throw_error(ErrorCode::OutOfDomain, "gamma must be >= 0");

    const int fsize = static_cast<int>(band.size());
    ComplexMatrix uf(plan.n, fsize);
    for (int j = 0; j < fsize; ++j) {
        const int k = band[static_cast<std::size_t>(j)];
        if (k < 0 || k >= plan.n) {
            throw_error(ErrorCode::IndexOutOfRange, "band index outside spectrum");
        }
        uf.col(j) = s.ua.col(k);
    }
    // Rows of U_F at the sampled vertices: D U_F.
    const int m = plan.sample_count();
    ComplexMatrix duf(m, fsize);
    for (int i = 0; i < m; ++i) duf.row(i) = uf.row(plan.samples[static_cast<std::size_t>(i)]);

    ComplexMatrix g = duf.adjoint() * duf;
    g.diagonal().array() += Complex(gamma / mu, 0.0);
    const ComplexVector rhs = duf.adjoint() * y;
    ComplexVector coeffs;
    try {
        coeffs = solve_hpd(g, rhs);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotPositiveDefinite) {
            throw_error(ErrorCode::SingularSystem, "bandlimited normal equations are singular");
        }
        throw;
    }
    ComplexVector f = uf * coeffs;
    ensure_finite(f, "bandlimited ridge output");
    return f;
}

double nmse(const ComplexVector& f_hat, const ComplexVector& f_ref) {
    if (f_hat.size() != f_ref.size()) {
        throw_error(ErrorCode::DimensionMismatch, "nmse inputs differ in length");
    }
    const double ref = f_ref.squaredNorm();
    if (ref == 0.0) throw_error(ErrorCode::ZeroReference, "nmse reference is zero");
    return (f_hat - f_ref).squaredNorm() / ref;
}

}  // namespace cgsp
