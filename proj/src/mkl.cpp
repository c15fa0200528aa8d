#include "cgsp/mkl.hpp"

#include <algorithm>
#include <cmath>

#include "cgsp/linalg.hpp"

namespace cgsp {

void KernelDictionary::validate() const {
    if (kernels.empty()) throw_error(ErrorCode::InvalidSpec, "kernel dictionary is empty");
    const Eigen::Index n = kernels.front().k.rows();
    for (const auto& km : kernels) {
        if (km.k.rows() != n || km.k.cols() != n) {
            throw_error(ErrorCode::DimensionMismatch, "dictionary kernels differ in size");
        }
    }
}

KernelMatrix combine(const KernelDictionary& dict, const RealVector& omega) {
    dict.validate();
    if (omega.size() != dict.count()) {
        throw_error(ErrorCode::DimensionMismatch, "weight count does not match dictionary");
    }
    ComplexMatrix acc = ComplexMatrix::Zero(dict.size(), dict.size());
    for (int l = 0; l < dict.count(); ++l) {
        double wl = omega(l);
        if (wl < 0.0) {
            if (wl < -1e-12) {
                throw_error(ErrorCode::NegativeWeight,
                            "kernel weight " + std::to_string(wl) + " is negative");
            }
            wl = 0.0;
        }
        if (wl != 0.0) acc += wl * dict.kernels[static_cast<std::size_t>(l)].k;
    }
    return KernelMatrix{std::move(acc), "mkl-combined"};
}

namespace {

// Euclidean projection onto the l1 ball of the given radius (sort-based).
RealVector project_l1(const RealVector& d, double radius) {
    if (d.lpNorm<1>() <= radius) return d;
    const Eigen::Index n = d.size();
    if (radius == 0.0) return RealVector::Zero(n);
    std::vector<double> mags(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) mags[static_cast<std::size_t>(i)] = std::abs(d(i));
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    double cumsum = 0.0;
    double cumsum_rho = 0.0;
    int rho = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cumsum += mags[static_cast<std::size_t>(i)];
        if (mags[static_cast<std::size_t>(i)] * static_cast<double>(i + 1) > cumsum - radius) {
            rho = static_cast<int>(i + 1);
            cumsum_rho = cumsum;
        }
    }
    const double theta = (cumsum_rho - radius) / static_cast<double>(rho);
    RealVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = std::max(std::abs(d(i)) - theta, 0.0);
        out(i) = d(i) >= 0.0 ? m : -m;
    }
    return out;
}

}  // namespace

RealVector project_l1_ball_nonneg(const RealVector& omega, const RealVector& omega0,
                                  double radius) {
    if (omega.size() != omega0.size()) {
        throw_error(ErrorCode::DimensionMismatch, "weight vectors differ in length");
    }
    if (radius < 0.0) throw_error(ErrorCode::OutOfDomain, "radius must be >= 0");
    RealVector w = omega;
    const double tol = 1e-10;
    for (int iter = 0; iter < 1000; ++iter) {
        w = w.cwiseMax(0.0);
        w = omega0 + project_l1(RealVector(w - omega0), radius);
        const bool nonneg = w.minCoeff() >= -tol;
        const bool within = (w - omega0).lpNorm<1>() <= radius + tol;
        if (nonneg && within) return w.cwiseMax(0.0);
    }
    throw_error(ErrorCode::ConvergenceFailure, "feasibility projection did not settle");
}

void MklConfig::validate(int l) const {
    if (!(gamma > 0.0)) throw_error(ErrorCode::InvalidSpec, "mkl gamma must be > 0");
    if (nu < 0.0) throw_error(ErrorCode::InvalidSpec, "mkl nu must be >= 0");
    if (eta < 0.0 || eta >= 1.0) throw_error(ErrorCode::InvalidSpec, "mkl eta must be in [0, 1)");
    if (!(eps > 0.0)) throw_error(ErrorCode::InvalidSpec, "mkl eps must be > 0");
    if (radius < 0.0) throw_error(ErrorCode::InvalidSpec, "mkl radius must be >= 0");
    if (max_iters < 1) throw_error(ErrorCode::InvalidSpec, "mkl max_iters must be >= 1");
    if (omega0.size() != 0) {
        if (omega0.size() != l) {
            throw_error(ErrorCode::DimensionMismatch, "omega0 length does not match dictionary");
        }
        if (omega0.minCoeff() < 0.0) {
            throw_error(ErrorCode::NegativeWeight, "omega0 must be nonnegative");
        }
    }
}

namespace {

struct Workspace {
    int l = 0;
    int m = 0;
    std::vector<ComplexMatrix> ks;      // per kernel, |S| x |S|
    std::vector<ComplexMatrix> k_cols;  // per kernel, n x |S|

    ComplexMatrix combine_s(const RealVector& omega) const {
        ComplexMatrix acc = ComplexMatrix::Zero(m, m);
        for (int i = 0; i < l; ++i) {
            if (omega(i) != 0.0) acc += omega(i) * ks[static_cast<std::size_t>(i)];
        }
        return acc;
    }
};

double objective(const Workspace& ws, const ComplexVector& y, const RealVector& omega,
                 const ComplexVector& beta, double gamma, double nu) {
    const ComplexMatrix ks = ws.combine_s(omega);
    const ComplexVector fit = ks * beta;
    const double loss = (y - fit).squaredNorm() / static_cast<double>(ws.m);
    const double ridge = std::real(beta.dot(fit));
    return loss + gamma * ridge + nu * omega.cwiseAbs().sum();
}

ComplexVector beta_solve(const Workspace& ws, const ComplexVector& y, const RealVector& omega,
                         double gamma) {
    ComplexMatrix m = ws.combine_s(omega);
    m.diagonal().array() += Complex(gamma * static_cast<double>(ws.m), 0.0);
    try {
        return solve_hpd(m, y);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotPositiveDefinite) {
            throw_error(ErrorCode::SingularSystem, "combined kernel system is not invertible");
        }
        throw;
    }
}

}  // namespace

MklResult mkl_fit(const KernelDictionary& dict, const SamplingPlan& plan, const ComplexVector& y,
                  const MklConfig& cfg) {
    dict.validate();
    plan.validate();
    const int l = dict.count();
    cfg.validate(l);
    if (dict.size() != plan.n) {
        throw_error(ErrorCode::DimensionMismatch, "dictionary size does not match plan");
    }
    if (y.size() != plan.sample_count()) {
        throw_error(ErrorCode::DimensionMismatch, "observation length does not match plan");
    }

    Workspace ws;
    ws.l = l;
    ws.m = plan.sample_count();
    ws.ks.reserve(static_cast<std::size_t>(l));
    ws.k_cols.reserve(static_cast<std::size_t>(l));
    for (const auto& km : dict.kernels) {
        ComplexMatrix s(ws.m, ws.m);
        ComplexMatrix cols(plan.n, ws.m);
        for (int j = 0; j < ws.m; ++j) {
            cols.col(j) = km.k.col(plan.samples[static_cast<std::size_t>(j)]);
        }
        for (int i = 0; i < ws.m; ++i) {
            s.row(i) = cols.row(plan.samples[static_cast<std::size_t>(i)]);
        }
        ws.ks.push_back(std::move(s));
        ws.k_cols.push_back(std::move(cols));
    }

    const RealVector omega0 = cfg.omega0.size() != 0
                                  ? cfg.omega0
                                  : RealVector::Constant(l, 1.0 / static_cast<double>(l));
    RealVector omega = omega0;
    ComplexVector beta = beta_solve(ws, y, omega, cfg.gamma);

    MklResult res;
    res.objective_trace.push_back(objective(ws, y, omega, beta, cfg.gamma, cfg.nu));

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        // omega step: proximal projected gradient with backtracking on the
        // smooth part (1/m)||y - V omega||^2 + gamma c^T omega.
        ComplexMatrix v(ws.m, l);
        RealVector c(l);
        for (int i = 0; i < l; ++i) {
            v.col(i) = ws.ks[static_cast<std::size_t>(i)] * beta;
            c(i) = std::real(beta.dot(v.col(i)));
        }
        const RealMatrix gram = (v.adjoint() * v).real();
        const RealVector vy = (v.adjoint() * y).real();
        const RealVector grad =
            2.0 / static_cast<double>(ws.m) * (gram * omega - vy) + cfg.gamma * c;

        const double g_now = objective(ws, y, omega, beta, cfg.gamma, cfg.nu);
        double t = 1.0;
        for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
            RealVector w = omega - t * grad;
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                const double m = std::max(std::abs(w(i)) - t * cfg.nu, 0.0);
                w(i) = w(i) >= 0.0 ? m : -m;
            }
            w = project_l1_ball_nonneg(w, omega0, cfg.radius);
            const double step_sq = (w - omega).squaredNorm();
            if (step_sq == 0.0) break;
            const double g_cand = objective(ws, y, w, beta, cfg.gamma, cfg.nu);
            if (g_cand <= g_now - 1e-4 * step_sq / t) {
                omega = w;
                break;
            }
            t *= 0.5;
        }

        // beta step: damped closed-form update; convexity keeps G monotone.
        const ComplexVector beta_star = beta_solve(ws, y, omega, cfg.gamma);
        const ComplexVector beta_next = cfg.eta * beta + (1.0 - cfg.eta) * beta_star;
        if (!beta_next.allFinite() || !omega.allFinite()) {
            throw_error(ErrorCode::NonFinite, "mkl iterate diverged");
        }
        const double delta = (beta_next - beta).norm();
        beta = beta_next;
        res.objective_trace.push_back(objective(ws, y, omega, beta, cfg.gamma, cfg.nu));
        res.iterations = iter;
        if (delta < cfg.eps) {
            res.converged = true;
            break;
        }
    }

    res.omega = omega;
    res.beta = beta;
    res.fitted_samples = ws.combine_s(omega) * beta;
    ComplexVector f = ComplexVector::Zero(plan.n);
    for (int i = 0; i < l; ++i) {
        if (omega(i) != 0.0) f += omega(i) * (ws.k_cols[static_cast<std::size_t>(i)] * beta);
    }
    res.f_opt = std::move(f);
    ensure_finite(res.f_opt, "mkl output");
    return res;
}

}  // namespace cgsp
