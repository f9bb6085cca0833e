#pragma once

#include <string>
#include <vector>

#include "mvgcca/kernels.hpp"
#include "mvgcca/linalg.hpp"

namespace mvgcca {

/// Symmetric nonnegative edge weights with a zero diagonal.
struct GraphAdjacency {
    Matrix W;

    /// Validates and wraps a weight matrix: square, finite, entrywise
    /// nonnegative, exactly symmetric, zero diagonal.
    static GraphAdjacency from_weights(Matrix w);

    Index size() const { return W.rows(); }
};

/// L = D - W together with the degree vector d_i = sum_j w_ij.
struct GraphLaplacian {
    Matrix L;
    Vector degree;

    Index size() const { return L.rows(); }
};

GraphAdjacency zero_graph(Index n);

GraphLaplacian laplacian(const GraphAdjacency& adj);

/// k-NN graph over kernel similarity: w_ij = K(i,j) when j is among the
/// k1 most similar neighbors of i or i is among those of j (self
/// excluded, ties broken by lower index), else 0.
GraphAdjacency knn_kernel_graph(const KernelMatrix& kernel, Index k1);

/// Same-label cosine k-NN graph: w_ij = cos(o_i, o_j) when i and j share
/// a label and either is among the other's k2 nearest same-label
/// neighbors (ranked by cosine similarity), else 0.
GraphAdjacency supervised_cosine_graph(const Matrix& o, const std::vector<int>& labels,
                                       Index k2);

/// W = sum_i weights_i * W_i.
GraphAdjacency combine_adjacency(const std::vector<GraphAdjacency>& graphs,
                                 const std::vector<double>& weights);

/// Induced subgraph on the given node subset, in the given order.
GraphAdjacency induced_subgraph(const GraphAdjacency& adj, const std::vector<Index>& nodes);

// TSV edge list: `i<TAB>j<TAB>weight`, 0-based, one undirected edge per
// line with i < j. Zero-weight pairs are omitted on save.
void save_edge_list(const GraphAdjacency& adj, const std::string& path);
GraphAdjacency load_edge_list(const std::string& path, Index n);

}  // namespace mvgcca
