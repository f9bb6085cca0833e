#pragma once

#include <random>
#include <vector>

#include "mvgcca/dataset.hpp"
#include "mvgcca/graph.hpp"
#include "mvgcca/linalg.hpp"

// Shared generators and independent oracles. Everything here is
// test-side machinery; none of it reuses the code paths under test
// beyond basic types.
namespace testutil {

using mvgcca::GraphAdjacency;
using mvgcca::Index;
using mvgcca::Matrix;
using mvgcca::MultiviewDataset;
using mvgcca::Vector;

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix out(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            out(i, j) = scale * gauss(rng);
        }
    }
    return out;
}

inline Matrix random_symmetric(Index n, std::mt19937_64& rng) {
    const Matrix a = random_matrix(n, n, rng);
    return 0.5 * (a + a.transpose());
}

// Well-conditioned random SPD matrix.
inline Matrix random_spd(Index n, std::mt19937_64& rng) {
    const Matrix a = random_matrix(n, n, rng);
    return a * a.transpose() + 0.5 * Matrix::Identity(n, n);
}

// d x n matrix with orthonormal rows (d <= n).
inline Matrix random_orthonormal_rows(Index d, Index n, std::mt19937_64& rng) {
    const Matrix a = random_matrix(n, d, rng);
    const Eigen::HouseholderQR<Matrix> qr(a);
    const Matrix q = qr.householderQ() * Matrix::Identity(n, d);
    return q.transpose();
}

inline MultiviewDataset random_dataset(const std::vector<Index>& dims, Index n,
                                       std::mt19937_64& rng) {
    std::vector<Matrix> views;
    views.reserve(dims.size());
    for (Index dm : dims) {
        views.push_back(random_matrix(dm, n, rng));
    }
    return MultiviewDataset::from_views(std::move(views));
}

// Random nonnegative symmetric adjacency with roughly the given edge density.
inline GraphAdjacency random_graph(Index n, std::mt19937_64& rng, double density = 0.4) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Matrix w = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (unit(rng) < density) {
                const double weight = unit(rng);
                w(i, j) = weight;
                w(j, i) = weight;
            }
        }
    }
    return GraphAdjacency::from_weights(std::move(w));
}

// Brute-force right-hand side of the smoothness identity:
// sum over unordered pairs of w_ij ||s_i - s_j||^2, written as the half
// double sum so each edge counts once, matching Tr(S L S^T) with L = D - W.
inline double smoothness_double_sum(const Matrix& s, const Matrix& w) {
    double total = 0.0;
    for (Index i = 0; i < w.rows(); ++i) {
        for (Index j = 0; j < w.cols(); ++j) {
            total += w(i, j) * (s.col(i) - s.col(j)).squaredNorm();
        }
    }
    return 0.5 * total;
}

}  // namespace testutil
