#pragma once

#include <string>

#include "cgsp/graph.hpp"
#include "cgsp/types.hpp"

namespace cgsp {

// Shortest round-trip decimal text for a double.
std::string format_double(double v);

// Signal CSV: header "index,re,im", one row per vertex.
void write_signal_csv(const std::string& path, const ComplexVector& f);
ComplexVector read_signal_csv(const std::string& path);

// Feature CSV: header "index,re_0,im_0,...,re_{D-1},im_{D-1}".
void write_features_csv(const std::string& path, const FeatureSet& features);
FeatureSet read_features_csv(const std::string& path);

// Edge list CSV: header "n,m,w", one row per undirected edge (n < m).
// The reader infers the vertex count from the largest index unless given.
void write_edge_list_csv(const std::string& path, const Graph& g);
Graph read_edge_list_csv(const std::string& path, int n = -1);

// Dense adjacency CSV: header "j_0,...,j_{N-1}", one row per vertex.
void write_adjacency_csv(const std::string& path, const Graph& g);
Graph read_adjacency_csv(const std::string& path);

struct IngestMeta {
    bool preprocessed = false;
    int shifted_components = 0;    // negative re/im components lifted by 256
    double max_magnitude = 0.0;    // normalizer applied to the whole vector
};

struct IngestResult {
    ComplexVector signal;
    IngestMeta meta;
};

// Reads "index,re,im" rows; with preprocessing, negative components are
// lifted by 256 (byte wraparound) and the vector is scaled by its largest
// magnitude.
IngestResult ingest_complex_csv(const std::string& path, bool preprocess);

}  // namespace cgsp
