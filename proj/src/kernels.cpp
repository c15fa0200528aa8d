#include "cgsp/kernels.hpp"

#include <cmath>

#include "cgsp/linalg.hpp"

namespace cgsp {

namespace {

void validate(const KernelSpec& spec) {
    switch (spec.family) {
        case KernelSpec::Family::Egk:
        case KernelSpec::Family::Hgk:
        case KernelSpec::Family::Elk:
        case KernelSpec::Family::Hlk:
            if (!(spec.sigma > 0.0)) {
                throw_error(ErrorCode::InvalidSpec, "kernel width sigma must be > 0");
            }
            break;
        case KernelSpec::Family::Pk:
            if (spec.c < 0.0) throw_error(ErrorCode::InvalidSpec, "pk offset c must be >= 0");
            if (spec.degree < 1) throw_error(ErrorCode::InvalidSpec, "pk degree must be >= 1");
            break;
        case KernelSpec::Family::Precomputed:
            if (!spec.precomputed) {
                throw_error(ErrorCode::InvalidSpec, "precomputed kernel lacks a matrix");
            }
            break;
    }
}

std::string family_name(KernelSpec::Family f) {
    switch (f) {
        case KernelSpec::Family::Egk: return "egk";
        case KernelSpec::Family::Hgk: return "hgk";
        case KernelSpec::Family::Elk: return "elk";
        case KernelSpec::Family::Hlk: return "hlk";
        case KernelSpec::Family::Pk: return "pk";
        case KernelSpec::Family::Precomputed: return "precomputed";
    }
    return "?";
}

std::string default_label(const KernelSpec& spec) {
    char buf[128];
    switch (spec.family) {
        case KernelSpec::Family::Egk:
        case KernelSpec::Family::Elk:
            std::snprintf(buf, sizeof(buf), "%s:sigma=%g", family_name(spec.family).c_str(),
                          spec.sigma);
            return buf;
        case KernelSpec::Family::Hgk:
        case KernelSpec::Family::Hlk:
            std::snprintf(buf, sizeof(buf), "%s:sigma=%g:metric=%s",
                          family_name(spec.family).c_str(), spec.sigma,
                          spec.metric.to_string().c_str());
            return buf;
        case KernelSpec::Family::Pk:
            std::snprintf(buf, sizeof(buf), "pk:c=%g:d=%d:metric=%s", spec.c, spec.degree,
                          spec.metric.to_string().c_str());
            return buf;
        case KernelSpec::Family::Precomputed:
            return "precomputed";
    }
    return "?";
}

Complex int_pow(Complex base, int n) {
    Complex out(1.0, 0.0);
    while (n > 0) {
        if (n & 1) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw_error(ErrorCode::InvalidSpec, "bad " + what + " '" + text + "'");
    }
}

}  // namespace

KernelSpec KernelSpec::egk(double sigma) {
    KernelSpec s;
    s.family = Family::Egk;
    s.sigma = sigma;
    validate(s);
    s.label = default_label(s);
    return s;
}

KernelSpec KernelSpec::hgk(double sigma, const MetricTensor& metric) {
    KernelSpec s;
    s.family = Family::Hgk;
    s.sigma = sigma;
    s.metric = metric;
    validate(s);
    s.label = default_label(s);
    return s;
}

KernelSpec KernelSpec::elk(double sigma) {
    KernelSpec s;
    s.family = Family::Elk;
    s.sigma = sigma;
    validate(s);
    s.label = default_label(s);
    return s;
}

KernelSpec KernelSpec::hlk(double sigma, const MetricTensor& metric) {
    KernelSpec s;
    s.family = Family::Hlk;
    s.sigma = sigma;
    s.metric = metric;
    validate(s);
    s.label = default_label(s);
    return s;
}

KernelSpec KernelSpec::pk(double c, int degree, const MetricTensor& metric) {
    KernelSpec s;
    s.family = Family::Pk;
    s.c = c;
    s.degree = degree;
    s.metric = metric;
    validate(s);
    s.label = default_label(s);
    return s;
}

KernelSpec KernelSpec::from_matrix(const ComplexMatrix& k, const std::string& label) {
    if (k.rows() != k.cols()) {
        throw_error(ErrorCode::DimensionMismatch, "precomputed kernel must be square");
    }
    if (!is_hermitian(k, 1e-8)) {
        throw_error(ErrorCode::NonHermitianInput, "precomputed kernel must be hermitian");
    }
    KernelSpec s;
    s.family = Family::Precomputed;
    s.precomputed = std::make_shared<const ComplexMatrix>(k);
    s.label = label;
    return s;
}

KernelSpec parse_kernel_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t colon = text.find(':', start);
        if (colon == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, colon - start));
        start = colon + 1;
    }
    if (parts.empty() || parts[0].empty()) {
        throw_error(ErrorCode::InvalidSpec, "empty kernel spec");
    }

    KernelSpec s;
    const std::string& fam = parts[0];
    if (fam == "egk") s.family = KernelSpec::Family::Egk;
    else if (fam == "hgk") s.family = KernelSpec::Family::Hgk;
    else if (fam == "elk") s.family = KernelSpec::Family::Elk;
    else if (fam == "hlk") s.family = KernelSpec::Family::Hlk;
    else if (fam == "pk") s.family = KernelSpec::Family::Pk;
    else throw_error(ErrorCode::InvalidSpec, "unknown kernel family '" + fam + "'");

    std::string pending_metric;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::string& seg = parts[i];
        const std::size_t eq = seg.find('=');
        if (eq == std::string::npos) {
            // Continuation of a metric value that itself contains ':' (torus:r).
            if (!pending_metric.empty()) {
                pending_metric += ":" + seg;
                continue;
            }
            throw_error(ErrorCode::InvalidSpec, "bad kernel spec segment '" + seg + "'");
        }
        const std::string key = seg.substr(0, eq);
        const std::string value = seg.substr(eq + 1);
        if (key == "sigma") s.sigma = parse_double(value, "sigma");
        else if (key == "c") s.c = parse_double(value, "c");
        else if (key == "d") {
            const double dv = parse_double(value, "degree");
            s.degree = static_cast<int>(dv);
            if (static_cast<double>(s.degree) != dv) {
                throw_error(ErrorCode::InvalidSpec, "pk degree must be an integer");
            }
        } else if (key == "metric") {
            pending_metric = value;
        } else {
            throw_error(ErrorCode::InvalidSpec, "unknown kernel spec key '" + key + "'");
        }
    }
    if (!pending_metric.empty()) s.metric = MetricTensor::from_string(pending_metric);
    validate(s);
    s.label = text;
    return s;
}

Complex kernel_eval(const KernelSpec& spec, const FeatureVector& zn, const FeatureVector& zm) {
    validate(spec);
    switch (spec.family) {
        case KernelSpec::Family::Egk: {
            const double d = dist_euclidean(zn, zm);
            return Complex(std::exp(-d * d / (2.0 * spec.sigma * spec.sigma)), 0.0);
        }
        case KernelSpec::Family::Hgk: {
            const double d = dist_hermitian(spec.metric, zn, zm);
            return Complex(std::exp(-d * d / (2.0 * spec.sigma * spec.sigma)), 0.0);
        }
        case KernelSpec::Family::Elk: {
            const double d = dist_euclidean(zn, zm);
            return Complex(std::exp(-d / spec.sigma), 0.0);
        }
        case KernelSpec::Family::Hlk: {
            const double d = dist_hermitian(spec.metric, zn, zm);
            return Complex(std::exp(-d / spec.sigma), 0.0);
        }
        case KernelSpec::Family::Pk: {
            const ComplexMatrix hbar = mean_metric(spec.metric, zn, zm);
            const Complex base = zn.dot(hbar * zm) + Complex(spec.c, 0.0);
            return int_pow(base, spec.degree);
        }
        case KernelSpec::Family::Precomputed:
            throw_error(ErrorCode::InvalidSpec,
                        "precomputed kernels evaluate by index, not by feature pair");
    }
    throw_error(ErrorCode::InvalidSpec, "unreachable kernel family");
}

KernelMatrix kernel_matrix(const KernelSpec& spec, const FeatureSet& features) {
    validate(spec);
    if (spec.family == KernelSpec::Family::Precomputed) {
        if (!features.empty() &&
            static_cast<Eigen::Index>(features.size()) != spec.precomputed->rows()) {
            throw_error(ErrorCode::DimensionMismatch,
                        "precomputed kernel size does not match feature count");
        }
        return KernelMatrix{*spec.precomputed, spec.label};
    }
    const Eigen::Index n = static_cast<Eigen::Index>(features.size());
    if (n == 0) throw_error(ErrorCode::DimensionMismatch, "empty feature set");
    const Eigen::Index d = features[0].size();
    for (const auto& z : features) {
        if (z.size() != d) throw_error(ErrorCode::DimensionMismatch, "ragged feature set");
    }

    const bool unit_diag = spec.family != KernelSpec::Family::Pk;
    ComplexMatrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = unit_diag ? Complex(1.0, 0.0)
                            : Complex(std::real(kernel_eval(
                                          spec, features[static_cast<std::size_t>(i)],
                                          features[static_cast<std::size_t>(i)])),
                                      0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Complex v = kernel_eval(spec, features[static_cast<std::size_t>(i)],
                                          features[static_cast<std::size_t>(j)]);
            k(i, j) = v;
            k(j, i) = std::conj(v);
        }
    }
    ensure_finite(k, "kernel matrix");
    return KernelMatrix{std::move(k), spec.label};
}

double KernelMatrix::min_eigenvalue_ratio() const {
    const EigenDecomposition dec = eig_hermitian(k);
    const double top = std::max(std::abs(dec.eigenvalues(0)), 1e-300);
    return dec.eigenvalues(dec.eigenvalues.size() - 1) / top;
}

KernelMatrix regularize_kernel(const KernelMatrix& k, double eps) {
    if (eps < 0.0) throw_error(ErrorCode::InvalidSpec, "regularization must be >= 0");
    KernelMatrix out{k.k, k.label};
    out.k.diagonal().array() += Complex(eps, 0.0);
    return out;
}

Complex rkhs_inner(const KernelMatrix& k, const ComplexVector& alpha, const ComplexVector& beta) {
    if (alpha.size() != k.k.rows() || beta.size() != k.k.rows()) {
        throw_error(ErrorCode::DimensionMismatch, "coefficient length does not match kernel");
    }
    return alpha.dot(k.k * beta);
}

double rkhs_norm_sq(const KernelMatrix& k, const ComplexVector& alpha) {
    return std::real(rkhs_inner(k, alpha, alpha));
}

}  // namespace cgsp
