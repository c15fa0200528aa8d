#include "cgsp/metrics.hpp"

#include <cmath>

namespace cgsp {

MetricTensor::MetricTensor(Kind kind, double torus_r) : kind_(kind), torus_r_(torus_r) {
    if (kind_ == Kind::Torus && !(torus_r_ > 0.0)) {
        throw_error(ErrorCode::InvalidSpec, "torus metric requires r > 0");
    }
}

MetricTensor MetricTensor::from_string(const std::string& name) {
    if (name == "euclidean") return MetricTensor(Kind::Euclidean);
    if (name == "kahler") return MetricTensor(Kind::Kahler);
    if (name == "fubini-study") return MetricTensor(Kind::FubiniStudy);
    if (name == "poincare") return MetricTensor(Kind::Poincare);
    if (name == "torus") return MetricTensor(Kind::Torus, 1.0);
    if (name.rfind("torus:", 0) == 0) {
        const std::string arg = name.substr(6);
        try {
            std::size_t pos = 0;
            const double r = std::stod(arg, &pos);
            if (pos != arg.size()) throw std::invalid_argument(arg);
            return MetricTensor(Kind::Torus, r);
        } catch (const std::logic_error&) {
            throw_error(ErrorCode::InvalidSpec, "bad torus radius '" + arg + "'");
        }
    }
    throw_error(ErrorCode::InvalidSpec, "unknown metric '" + name + "'");
}

std::string MetricTensor::to_string() const {
    switch (kind_) {
        case Kind::Euclidean: return "euclidean";
        case Kind::Kahler: return "kahler";
        case Kind::FubiniStudy: return "fubini-study";
        case Kind::Poincare: return "poincare";
        case Kind::Torus: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "torus:%g", torus_r_);
            return buf;
        }
    }
    return "euclidean";
}

ComplexMatrix metric_at(const MetricTensor& metric, const FeatureVector& z) {
    const Eigen::Index d = z.size();
    if (d == 0) throw_error(ErrorCode::DimensionMismatch, "metric_at requires a non-empty point");
    if (!z.allFinite()) throw_error(ErrorCode::NonFinite, "metric_at input");
    const double s = z.squaredNorm();
    switch (metric.kind()) {
        case MetricTensor::Kind::Euclidean:
            return ComplexMatrix::Identity(d, d);
        case MetricTensor::Kind::Torus: {
            ComplexMatrix h = ComplexMatrix::Zero(d, d);
            double scale = 1.0;
            const double r2 = metric.torus_r() * metric.torus_r();
            for (Eigen::Index i = 0; i < d; ++i) {
                h(i, i) = scale;
                scale *= r2;
            }
            return h;
        }
        case MetricTensor::Kind::Kahler:
            return ComplexMatrix::Identity(d, d) / ((1.0 + s) * (1.0 + s));
        case MetricTensor::Kind::FubiniStudy: {
            ComplexMatrix h = ComplexMatrix::Identity(d, d) / (1.0 + s);
            h -= z * z.adjoint() / ((1.0 + s) * (1.0 + s));
            return h;
        }
        case MetricTensor::Kind::Poincare: {
            if (!(s < 1.0)) {
                throw_error(ErrorCode::OutOfDomain,
                            "poincare metric requires |z|^2 < 1, got " + std::to_string(s));
            }
            const double denom = (1.0 - s) * (1.0 - s);
            return ComplexMatrix::Identity(d, d) * (4.0 / denom);
        }
    }
    throw_error(ErrorCode::InvalidSpec, "unreachable metric kind");
}

ComplexMatrix mean_metric(const MetricTensor& metric, const FeatureVector& zn,
                          const FeatureVector& zm) {
    if (zn.size() != zm.size()) {
        throw_error(ErrorCode::DimensionMismatch, "feature dimensions differ");
    }
    return 0.5 * (metric_at(metric, zn) + metric_at(metric, zm));
}

double dist_euclidean(const FeatureVector& zn, const FeatureVector& zm) {
    if (zn.size() != zm.size()) {
        throw_error(ErrorCode::DimensionMismatch, "feature dimensions differ");
    }
    return (zn - zm).norm();
}

double dist_hermitian(const MetricTensor& metric, const FeatureVector& zn,
                      const FeatureVector& zm) {
    if (zn.size() != zm.size()) {
        throw_error(ErrorCode::DimensionMismatch, "feature dimensions differ");
    }
    const ComplexMatrix hbar = mean_metric(metric, zn, zm);
    const ComplexVector delta = zn - zm;
    const double q = std::real(delta.dot(hbar * delta));
    return std::sqrt(std::max(q, 0.0));
}

}  // namespace cgsp
