#include "mvgcca/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <unordered_map>

namespace mvgcca {

namespace {

void validate_weights(const Matrix& w) {
    if (w.rows() != w.cols()) {
        throw DimensionError("adjacency matrix must be square");
    }
    require_finite(w, "adjacency");
    if ((w.array() < 0.0).any()) {
        throw InputError("adjacency weights must be nonnegative");
    }
    if ((w.diagonal().array() != 0.0).any()) {
        throw InputError("adjacency diagonal must be zero (no self-loops)");
    }
    if (w != w.transpose()) {
        throw InputError("adjacency matrix must be symmetric");
    }
}

// Indices of the k columns most similar to `self` under `score`, self
// excluded, ties broken by lower index. `allowed` filters candidates.
template <typename ScoreFn, typename AllowFn>
std::vector<Index> top_k_neighbors(Index self, Index n, Index k, ScoreFn score,
                                   AllowFn allowed) {
    std::vector<Index> candidates;
    candidates.reserve(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
        if (j != self && allowed(j)) candidates.push_back(j);
    }
    const auto kk = std::min<std::size_t>(static_cast<std::size_t>(k), candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<long>(kk),
                      candidates.end(), [&](Index a, Index b) {
                          const double sa = score(a), sb = score(b);
                          if (sa != sb) return sa > sb;
                          return a < b;
                      });
    candidates.resize(kk);
    return candidates;
}

}  // namespace

GraphAdjacency GraphAdjacency::from_weights(Matrix w) {
    validate_weights(w);
    return GraphAdjacency{std::move(w)};
}

GraphAdjacency zero_graph(Index n) {
    if (n < 1) throw DimensionError("graph needs at least one node");
    return GraphAdjacency{Matrix::Zero(n, n)};
}

GraphLaplacian laplacian(const GraphAdjacency& adj) {
    validate_weights(adj.W);
    GraphLaplacian out;
    out.degree = adj.W.rowwise().sum();
    out.L = -adj.W;
    out.L.diagonal() += out.degree;
    return out;
}

GraphAdjacency knn_kernel_graph(const KernelMatrix& kernel, Index k1) {
    const Matrix k = symmetrized(kernel.K);
    const Index n = k.rows();
    if (k1 < 1 || k1 > n - 1) {
        throw ConfigurationError("k1 must lie in [1, N-1], got " + std::to_string(k1) +
                                 " for N=" + std::to_string(n));
    }
    Matrix w = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto nbrs = top_k_neighbors(
            i, n, k1, [&](Index j) { return k(i, j); }, [](Index) { return true; });
        for (Index j : nbrs) {
            // union rule: an edge whenever either endpoint selects the other
            w(i, j) = k(i, j);
            w(j, i) = k(i, j);
        }
    }
    w.diagonal().setZero();
    return GraphAdjacency::from_weights(std::move(w));
}

GraphAdjacency supervised_cosine_graph(const Matrix& o, const std::vector<int>& labels,
                                       Index k2) {
    require_finite(o, "data");
    const Index n = o.cols();
    if (static_cast<Index>(labels.size()) != n) {
        throw DimensionError("expected one label per column, got " +
                             std::to_string(labels.size()) + " labels for " +
                             std::to_string(n) + " columns");
    }
    if (k2 < 1) throw ConfigurationError("k2 must be at least 1");

    Matrix unit = o;
    for (Index j = 0; j < n; ++j) {
        const double norm = unit.col(j).norm();
        if (norm == 0.0) {
            throw InputError("column " + std::to_string(j) + " is all zeros; cosine "
                             "similarity is undefined");
        }
        unit.col(j) /= norm;
    }

    std::unordered_map<int, Index> class_sizes;
    for (int label : labels) ++class_sizes[label];
    for (const auto& [label, size] : class_sizes) {
        if (size < k2 + 1) {
            throw ConfigurationError("class " + std::to_string(label) + " has only " +
                                     std::to_string(size) + " members; k2=" +
                                     std::to_string(k2) + " needs at least " +
                                     std::to_string(k2 + 1));
        }
    }

    Matrix cosine = unit.transpose() * unit;
    cosine = 0.5 * (cosine + cosine.transpose()).eval();
    Matrix w = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto nbrs = top_k_neighbors(
            i, n, k2, [&](Index j) { return cosine(i, j); },
            [&](Index j) { return labels[static_cast<std::size_t>(j)] ==
                                  labels[static_cast<std::size_t>(i)]; });
        for (Index j : nbrs) {
            w(i, j) = cosine(i, j);
            w(j, i) = cosine(i, j);
        }
    }
    w.diagonal().setZero();
    return GraphAdjacency::from_weights(std::move(w));
}

GraphAdjacency combine_adjacency(const std::vector<GraphAdjacency>& graphs,
                                 const std::vector<double>& weights) {
    if (graphs.empty()) throw InputError("no graphs to combine");
    if (graphs.size() != weights.size()) {
        throw DimensionError("got " + std::to_string(weights.size()) + " weights for " +
                             std::to_string(graphs.size()) + " graphs");
    }
    const Index n = graphs.front().size();
    Matrix w = Matrix::Zero(n, n);
    for (std::size_t g = 0; g < graphs.size(); ++g) {
        if (graphs[g].size() != n) {
            throw DimensionError("graph " + std::to_string(g) + " has size " +
                                 std::to_string(graphs[g].size()) + ", expected " +
                                 std::to_string(n));
        }
        if (weights[g] < 0.0) {
            throw InputError("combination weights must be nonnegative");
        }
        w += weights[g] * graphs[g].W;
    }
    return GraphAdjacency::from_weights(std::move(w));
}

GraphAdjacency induced_subgraph(const GraphAdjacency& adj, const std::vector<Index>& nodes) {
    const Index m = static_cast<Index>(nodes.size());
    Matrix w(m, m);
    for (Index a = 0; a < m; ++a) {
        for (Index b = 0; b < m; ++b) {
            const Index i = nodes[static_cast<std::size_t>(a)];
            const Index j = nodes[static_cast<std::size_t>(b)];
            if (i < 0 || i >= adj.size() || j < 0 || j >= adj.size()) {
                throw DimensionError("subgraph node index out of range");
            }
            w(a, b) = adj.W(i, j);
        }
    }
    return GraphAdjacency::from_weights(std::move(w));
}

void save_edge_list(const GraphAdjacency& adj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    char buf[64];
    for (Index i = 0; i < adj.size(); ++i) {
        for (Index j = i + 1; j < adj.size(); ++j) {
            if (adj.W(i, j) != 0.0) {
                std::snprintf(buf, sizeof(buf), "%.17g", adj.W(i, j));
                out << i << '\t' << j << '\t' << buf << '\n';
            }
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

GraphAdjacency load_edge_list(const std::string& path, Index n) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    Matrix w = Matrix::Zero(n, n);
    std::string line;
    Index line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        long long i = 0, j = 0;
        double weight = 0.0;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        auto r1 = std::from_chars(p, end, i);
        if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != '\t') {
            throw IoError(path + ":" + std::to_string(line_no) + ": malformed edge line");
        }
        auto r2 = std::from_chars(r1.ptr + 1, end, j);
        if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != '\t') {
            throw IoError(path + ":" + std::to_string(line_no) + ": malformed edge line");
        }
        auto r3 = std::from_chars(r2.ptr + 1, end, weight);
        if (r3.ec != std::errc{} || r3.ptr != end) {
            throw IoError(path + ":" + std::to_string(line_no) + ": malformed weight");
        }
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": node index out of range for N=" + std::to_string(n));
        }
        if (i >= j) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": edges must satisfy i < j");
        }
        w(i, j) = weight;
        w(j, i) = weight;
    }
    return GraphAdjacency::from_weights(std::move(w));
}

}  // namespace mvgcca
