#include "cgsp/graph.hpp"

#include <algorithm>
#include <cmath>

#include "cgsp/rng.hpp"

namespace cgsp {

Graph Graph::from_adjacency(const RealMatrix& w) {
    const Eigen::Index n = w.rows();
    if (n == 0) throw_error(ErrorCode::EmptyGraph, "graph needs at least one vertex");
    if (w.cols() != n) throw_error(ErrorCode::DimensionMismatch, "adjacency must be square");
    if (!w.allFinite()) throw_error(ErrorCode::NonFinite, "adjacency");
    const double scale = std::max(w.cwiseAbs().maxCoeff(), 1.0);
    if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw_error(ErrorCode::NonHermitianInput, "adjacency must be symmetric");
    }
    if (w.minCoeff() < -1e-12 * scale) {
        throw_error(ErrorCode::NegativeWeight, "adjacency weights must be nonnegative");
    }

    Graph g;
    g.w = 0.5 * (w + w.transpose());
    g.w = g.w.cwiseMax(0.0);
    g.w.diagonal().setZero();
    g.degrees = g.w.rowwise().sum();
    g.laplacian = RealMatrix(g.degrees.asDiagonal()) - g.w;
    RealVector dinv_sqrt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        dinv_sqrt(i) = g.degrees(i) > 0.0 ? 1.0 / std::sqrt(g.degrees(i)) : 0.0;
    }
    g.laplacian_norm = RealMatrix::Identity(n, n) -
                       dinv_sqrt.asDiagonal() * g.w * dinv_sqrt.asDiagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (g.degrees(i) == 0.0) g.laplacian_norm(i, i) = 1.0;
    }
    return g;
}

Graph graph_from_kernel(const KernelSpec& spec, const FeatureSet& features,
                        const SparsifyRule& rule) {
    if (features.empty()) throw_error(ErrorCode::EmptyGraph, "empty feature set");
    if (spec.family == KernelSpec::Family::Pk) {
        throw_error(ErrorCode::ComplexWeight,
                    "pk kernels are sign-indefinite and cannot define edge weights");
    }
    const KernelMatrix km =
        spec.family == KernelSpec::Family::Precomputed
            ? KernelMatrix{*spec.precomputed, spec.label}
            : kernel_matrix(spec, features);
    const Eigen::Index n = km.k.rows();

    RealMatrix w(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex v = km.k(i, j);
            if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
                throw_error(ErrorCode::ComplexWeight, "kernel produced a non-real weight");
            }
            if (v.real() < -1e-12) {
                throw_error(ErrorCode::NegativeWeight, "kernel produced a negative weight");
            }
            w(i, j) = std::max(v.real(), 0.0);
        }
    }
    w.diagonal().setZero();

    if (rule.knn > 0 && rule.knn < n - 1) {
        // Union rule: an edge survives if either endpoint ranks it among its
        // k strongest.
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> keep(n, n);
        keep.setConstant(false);
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n - 1));
        for (Eigen::Index i = 0; i < n; ++i) {
            order.clear();
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j != i) order.push_back(j);
            }
            std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
                return w(i, a) > w(i, b);
            });
            for (int r = 0; r < rule.knn; ++r) {
                const Eigen::Index j = order[static_cast<std::size_t>(r)];
                keep(i, j) = true;
                keep(j, i) = true;
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (!keep(i, j)) w(i, j) = 0.0;
            }
        }
    }
    return Graph::from_adjacency(w);
}

Graph community_graph(int n, int communities, double p_in, double p_out, std::uint64_t seed) {
    if (n <= 0) throw_error(ErrorCode::EmptyGraph, "community graph needs n > 0");
    if (communities <= 0 || communities > n) {
        throw_error(ErrorCode::InvalidSpec, "community count must be in [1, n]");
    }
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0) {
        throw_error(ErrorCode::InvalidSpec, "edge probabilities must be in [0, 1]");
    }
    Rng rng(derive_seed(seed, {0x636f6dULL}));
    RealMatrix w = RealMatrix::Zero(n, n);
    const int per = (n + communities - 1) / communities;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool same = (i / per) == (j / per);
            const double p = same ? p_in : p_out;
            if (rng.uniform() < p) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    return Graph::from_adjacency(w);
}

}  // namespace cgsp
