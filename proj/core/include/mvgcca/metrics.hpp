#pragma once

#include <cstdint>
#include <vector>

#include "mvgcca/linalg.hpp"

namespace mvgcca {

/// Row-wise standardization to mean 0, variance 1 (population, 1/N).
/// Constant rows are zeroed; their indices are appended to *zeroed_rows
/// when given so callers can warn.
Matrix zscore(const Matrix& e, std::vector<Index>* zeroed_rows = nullptr);

/// One query's candidate ordering. `ranked` is a permutation of the
/// candidate indices (descending cosine similarity, ties by lower
/// index); relevant[r] flags whether ranked[r] is a correct answer and
/// is filled in by the caller.
struct RankingResult {
    Index query_id = -1;
    std::vector<Index> ranked;
    std::vector<bool> relevant;
};

RankingResult rank_by_cosine(const Vector& query, const Matrix& candidates);

/// Marks result.relevant[r] = true where ranked[r] is in relevant_ids.
void set_relevance(RankingResult& result, const std::vector<Index>& relevant_ids);

struct RetrievalMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double mrr = 0.0;
    Index skipped_queries = 0;  // queries with no relevant candidate
};

/// Macro-averages over queries: precision@L = (#relevant in top L)/L,
/// recall@L = (#relevant in top L)/(#relevant total), and MRR over the
/// full list. Queries without any relevant candidate are excluded and
/// counted in skipped_queries.
RetrievalMetrics precision_recall_mrr(const std::vector<RankingResult>& rankings, Index l);

struct ClusterAssignment {
    std::vector<int> labels;
    int k = 0;
};

/// Lloyd iterations from a k-means++ start; deterministic for a fixed
/// (E, k, seed). Stops when assignments stabilize or after 300 rounds.
/// A cluster that empties is re-seeded at the point farthest from its
/// current centroid.
ClusterAssignment kmeans(const Matrix& e, int k, std::uint64_t seed);

/// Share of samples matched under the best cluster-to-class assignment
/// (computed by optimal matching on the confusion matrix).
double clustering_accuracy(const ClusterAssignment& pred, const std::vector<int>& truth);

/// C_t / sum_i C_i with C_t = ||E||_F^2 and C_i the within-cluster
/// scatter. Returns +infinity when every cluster is a single point.
double scatter_ratio(const Matrix& e, const ClusterAssignment& assign);

struct PcaResult {
    Matrix scores;       // d x N component scores
    Matrix loadings;     // D x d principal directions
    Vector eigenvalues;  // of the N x N Gram matrix, descending
};

/// PCA through the N x N Gram matrix (usable for D > N); input must be
/// centered.
PcaResult pca_dual(const Matrix& concat_centered, Index d);

/// Top-d principal component scores of centered concatenated views.
Matrix pca_baseline(const Matrix& concat_centered, Index d);

/// j-nearest-neighbor vote in embedding space (Euclidean; distance ties
/// by lower index, vote ties by smaller label).
std::vector<int> knn_classify(const Matrix& train_embedding,
                              const std::vector<int>& train_labels,
                              const Matrix& test_embedding, int neighbors);

/// Min-cost perfect matching on a square cost matrix; returns the column
/// assigned to each row. Exposed for testing.
std::vector<Index> hungarian_min_cost(const Matrix& cost);

}  // namespace mvgcca
