#pragma once

#include <cstdint>

#include "cgsp/kernels.hpp"
#include "cgsp/types.hpp"

namespace cgsp {

// Undirected weighted graph: W real symmetric nonnegative, zero diagonal.
struct Graph {
    RealMatrix w;
    RealVector degrees;        // row sums of w
    RealMatrix laplacian;      // diag(degrees) - w
    RealMatrix laplacian_norm; // I - D^{-1/2} W D^{-1/2}, isolated vertices get 1

    int size() const { return static_cast<int>(w.rows()); }

    static Graph from_adjacency(const RealMatrix& w);
};

struct SparsifyRule {
    // Symmetric k-nearest-neighbor union: keep w_nm when m is among the k
    // largest weights of n or vice versa. k <= 0 keeps the dense graph.
    int knn = 10;

    static SparsifyRule dense() { return SparsifyRule{0}; }
    static SparsifyRule knn_union(int k) { return SparsifyRule{k}; }
};

// Similarity graph from kernel evaluations on the feature set. Requires a
// kernel with real nonnegative values (Gaussian/Laplacian families); pk and
// other sign-indefinite kernels are rejected with ComplexWeight.
Graph graph_from_kernel(const KernelSpec& spec, const FeatureSet& features,
                        const SparsifyRule& rule = SparsifyRule{});

// Planted-partition graph: unit-weight edges with probability p_in inside a
// community and p_out across, seeded.
Graph community_graph(int n, int communities, double p_in, double p_out, std::uint64_t seed);

}  // namespace cgsp
