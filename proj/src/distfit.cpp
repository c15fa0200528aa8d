#include <algorithm>
#include <cmath>

#include "cgsp/datagen.hpp"
#include "cgsp/rng.hpp"

namespace cgsp {

namespace {

void check_magnitudes(const RealVector& x, int minimum) {
    if (x.size() < minimum) {
        throw_error(ErrorCode::InsufficientData,
                    "need at least " + std::to_string(minimum) + " samples, got " +
                        std::to_string(x.size()));
    }
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x(i)) || x(i) < 0.0) {
            throw_error(ErrorCode::OutOfDomain, "magnitudes must be finite and nonnegative");
        }
    }
}

}  // namespace

RayleighFit fit_rayleigh(const RealVector& magnitudes) {
    check_magnitudes(magnitudes, 10);
    const double ssq = magnitudes.squaredNorm();
    if (ssq == 0.0) throw_error(ErrorCode::FitDiverged, "all magnitudes are zero");
    RayleighFit fit;
    fit.n = static_cast<int>(magnitudes.size());
    fit.sigma = std::sqrt(ssq / (2.0 * static_cast<double>(fit.n)));
    return fit;
}

WeibullFit fit_weibull(const RealVector& magnitudes, double tol, int max_iters) {
    check_magnitudes(magnitudes, 10);
    const Eigen::Index n = magnitudes.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (magnitudes(i) == 0.0) {
            throw_error(ErrorCode::OutOfDomain, "weibull requires strictly positive samples");
        }
    }

    RealVector logs(n);
    for (Eigen::Index i = 0; i < n; ++i) logs(i) = std::log(magnitudes(i));
    const double log_mean = logs.mean();
    const double log_var = (logs.array() - log_mean).square().sum() / static_cast<double>(n - 1);
    if (log_var <= 1e-28 * (1.0 + log_mean * log_mean)) {
        throw_error(ErrorCode::FitDiverged, "weibull shape estimate diverges on constant data");
    }

    // Newton iteration on g(k) = sum x^k log x / sum x^k - 1/k - mean(log x).
    double k = 1.2 / std::sqrt(log_var);
    WeibullFit fit;
    fit.n = static_cast<int>(n);
    bool done = false;
    for (int iter = 0; iter < max_iters; ++iter) {
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double xk = std::pow(magnitudes(i), k);
            s0 += xk;
            s1 += xk * logs(i);
            s2 += xk * logs(i) * logs(i);
        }
        const double g = s1 / s0 - 1.0 / k - log_mean;
        const double dg = (s2 * s0 - s1 * s1) / (s0 * s0) + 1.0 / (k * k);
        const double step = g / dg;
        double k_next = k - step;
        if (!std::isfinite(k_next) || k_next <= 0.0) k_next = k / 2.0;
        fit.iterations = iter + 1;
        if (std::abs(k_next - k) <= tol * std::max(1.0, std::abs(k))) {
            k = k_next;
            done = true;
            break;
        }
        k = k_next;
    }
    if (!done || !std::isfinite(k) || k <= 0.0) {
        throw_error(ErrorCode::FitDiverged, "weibull shape iteration did not converge");
    }

    double sk = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) sk += std::pow(magnitudes(i), k);
    fit.shape = k;
    fit.scale = std::pow(sk / static_cast<double>(n), 1.0 / k);
    return fit;
}

double rayleigh_pdf(const RayleighFit& fit, double x) {
    if (x < 0.0) return 0.0;
    const double s2 = fit.sigma * fit.sigma;
    return x / s2 * std::exp(-x * x / (2.0 * s2));
}

double rayleigh_cdf(const RayleighFit& fit, double x) {
    if (x < 0.0) return 0.0;
    const double s2 = fit.sigma * fit.sigma;
    return 1.0 - std::exp(-x * x / (2.0 * s2));
}

double weibull_pdf(const WeibullFit& fit, double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return fit.shape > 1.0 ? 0.0 : (fit.shape == 1.0 ? 1.0 / fit.scale : 0.0);
    const double r = x / fit.scale;
    return fit.shape / fit.scale * std::pow(r, fit.shape - 1.0) *
           std::exp(-std::pow(r, fit.shape));
}

double weibull_cdf(const WeibullFit& fit, double x) {
    if (x <= 0.0) return 0.0;
    return 1.0 - std::exp(-std::pow(x / fit.scale, fit.shape));
}

RealVector sample_rayleigh(double sigma, int n, std::uint64_t seed) {
    if (!(sigma > 0.0)) throw_error(ErrorCode::OutOfDomain, "rayleigh sigma must be > 0");
    if (n < 1) throw_error(ErrorCode::InsufficientData, "need n >= 1");
    Rng rng(derive_seed(seed, {0x726179ULL}));
    RealVector out(n);
    for (int i = 0; i < n; ++i) {
        out(i) = sigma * std::sqrt(-2.0 * std::log1p(-rng.uniform()));
    }
    return out;
}

RealVector sample_weibull(double shape, double scale, int n, std::uint64_t seed) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw_error(ErrorCode::OutOfDomain, "weibull parameters must be > 0");
    }
    if (n < 1) throw_error(ErrorCode::InsufficientData, "need n >= 1");
    Rng rng(derive_seed(seed, {0x776569ULL}));
    RealVector out(n);
    for (int i = 0; i < n; ++i) {
        out(i) = scale * std::pow(-std::log1p(-rng.uniform()), 1.0 / shape);
    }
    return out;
}

EmpiricalDistribution EmpiricalDistribution::from(const RealVector& values) {
    if (values.size() == 0) throw_error(ErrorCode::EmptySignal, "empty sample");
    EmpiricalDistribution d;
    d.sorted = values;
    std::sort(d.sorted.data(), d.sorted.data() + d.sorted.size());
    return d;
}

double EmpiricalDistribution::ecdf(double x) const {
    const double* begin = sorted.data();
    const double* end = begin + sorted.size();
    // count of samples <= x gives right continuity
    const auto count = std::upper_bound(begin, end, x) - begin;
    return static_cast<double>(count) / static_cast<double>(sorted.size());
}

double EmpiricalDistribution::Histogram::value(double x) const {
    if (density.size() == 0 || width <= 0.0) return 0.0;
    if (x < lo) return 0.0;
    const auto bin = static_cast<Eigen::Index>((x - lo) / width);
    if (bin < 0 || bin >= density.size()) return 0.0;
    return density(bin);
}

EmpiricalDistribution::Histogram EmpiricalDistribution::histogram() const {
    Histogram h;
    const Eigen::Index n = sorted.size();
    const double lo = sorted(0);
    const double hi = sorted(n - 1);
    const double q1 = sorted(static_cast<Eigen::Index>(0.25 * static_cast<double>(n - 1)));
    const double q3 = sorted(static_cast<Eigen::Index>(0.75 * static_cast<double>(n - 1)));
    const double iqr = q3 - q1;
    double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
    if (width <= 0.0 || hi == lo) {
        // Flat samples collapse into one bin.
        h.lo = lo;
        h.width = hi > lo ? hi - lo : 1.0;
        h.density = RealVector::Constant(1, 1.0 / h.width);
        return h;
    }
    const auto bins = static_cast<Eigen::Index>(std::ceil((hi - lo) / width));
    h.lo = lo;
    h.width = width;
    h.density = RealVector::Zero(std::max<Eigen::Index>(bins, 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        auto bin = static_cast<Eigen::Index>((sorted(i) - lo) / width);
        bin = std::min(bin, h.density.size() - 1);
        h.density(bin) += 1.0;
    }
    h.density /= static_cast<double>(n) * width;
    return h;
}

}  // namespace cgsp
