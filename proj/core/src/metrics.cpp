#include "mvgcca/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace mvgcca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Index> sorted_by_score(const std::vector<double>& scores) {
    std::vector<Index> order(scores.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double sa = scores[static_cast<std::size_t>(a)];
        const double sb = scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    });
    return order;
}

}  // namespace

Matrix zscore(const Matrix& e, std::vector<Index>* zeroed_rows) {
    require_finite(e, "embedding");
    const Index n = e.cols();
    if (n < 1) throw InputError("cannot standardize an empty embedding");
    Matrix out(e.rows(), n);
    for (Index i = 0; i < e.rows(); ++i) {
        const double mean = e.row(i).mean();
        const double variance =
            (e.row(i).array() - mean).square().sum() / static_cast<double>(n);
        const double sd = std::sqrt(variance);
        if (sd <= 1e-12 * (std::abs(mean) + 1.0)) {
            out.row(i).setZero();
            if (zeroed_rows) zeroed_rows->push_back(i);
        } else {
            out.row(i) = (e.row(i).array() - mean) / sd;
        }
    }
    return out;
}

RankingResult rank_by_cosine(const Vector& query, const Matrix& candidates) {
    require_finite(candidates, "candidates");
    if (!query.allFinite()) throw InputError("query contains non-finite entries");
    if (query.size() != candidates.rows()) {
        throw DimensionError("query has dimension " + std::to_string(query.size()) +
                             ", candidates have " + std::to_string(candidates.rows()));
    }
    const double query_norm = query.norm();
    if (query_norm == 0.0) throw InputError("query vector is all zeros");

    const Index n = candidates.cols();
    std::vector<double> similarity(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
        const double cn = candidates.col(j).norm();
        // zero candidates sink below any real cosine
        similarity[static_cast<std::size_t>(j)] =
            cn == 0.0 ? -2.0 : query.dot(candidates.col(j)) / (query_norm * cn);
    }
    RankingResult result;
    result.ranked = sorted_by_score(similarity);
    result.relevant.assign(static_cast<std::size_t>(n), false);
    return result;
}

void set_relevance(RankingResult& result, const std::vector<Index>& relevant_ids) {
    std::unordered_set<Index> ids(relevant_ids.begin(), relevant_ids.end());
    result.relevant.assign(result.ranked.size(), false);
    for (std::size_t r = 0; r < result.ranked.size(); ++r) {
        if (ids.count(result.ranked[r])) result.relevant[r] = true;
    }
}

RetrievalMetrics precision_recall_mrr(const std::vector<RankingResult>& rankings, Index l) {
    if (l < 1) throw ConfigurationError("the cutoff L must be at least 1");
    RetrievalMetrics out;
    Index used = 0;
    for (const RankingResult& ranking : rankings) {
        const std::size_t n = ranking.ranked.size();
        const auto total_relevant = static_cast<Index>(
            std::count(ranking.relevant.begin(), ranking.relevant.end(), true));
        if (total_relevant == 0) {
            ++out.skipped_queries;
            continue;
        }
        const auto top = std::min<std::size_t>(static_cast<std::size_t>(l), n);
        Index hits = 0;
        for (std::size_t r = 0; r < top; ++r) {
            if (ranking.relevant[r]) ++hits;
        }
        out.precision += static_cast<double>(hits) / static_cast<double>(l);
        out.recall += static_cast<double>(hits) / static_cast<double>(total_relevant);
        for (std::size_t r = 0; r < n; ++r) {
            if (ranking.relevant[r]) {
                out.mrr += 1.0 / static_cast<double>(r + 1);
                break;
            }
        }
        ++used;
    }
    if (used == 0) {
        throw InputError("no query carries a relevant candidate");
    }
    out.precision /= static_cast<double>(used);
    out.recall /= static_cast<double>(used);
    out.mrr /= static_cast<double>(used);
    return out;
}

ClusterAssignment kmeans(const Matrix& e, int k, std::uint64_t seed) {
    require_finite(e, "embedding");
    const Index n = e.cols();
    if (k < 1) throw ConfigurationError("k must be at least 1");
    if (static_cast<Index>(k) > n) {
        throw ConfigurationError("k=" + std::to_string(k) + " exceeds the sample count " +
                                 std::to_string(n));
    }
    std::mt19937_64 rng(seed);

    // k-means++ seeding
    Matrix centroids(e.rows(), k);
    std::vector<double> dist2(static_cast<std::size_t>(n), kInf);
    std::vector<bool> chosen(static_cast<std::size_t>(n), false);
    const Index first =
        std::uniform_int_distribution<Index>(0, n - 1)(rng);
    centroids.col(0) = e.col(first);
    chosen[static_cast<std::size_t>(first)] = true;
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (Index i = 0; i < n; ++i) {
            const double d2 = (e.col(i) - centroids.col(c - 1)).squaredNorm();
            auto& slot = dist2[static_cast<std::size_t>(i)];
            slot = std::min(slot, d2);
            total += slot;
        }
        Index next = -1;
        if (total > 0.0) {
            double r = std::uniform_real_distribution<double>(0.0, total)(rng);
            for (Index i = 0; i < n; ++i) {
                r -= dist2[static_cast<std::size_t>(i)];
                if (r <= 0.0) {
                    next = i;
                    break;
                }
            }
            if (next < 0) next = n - 1;
        } else {
            // all remaining mass is zero (duplicate points); take the first
            // index not already used as a centroid
            for (Index i = 0; i < n; ++i) {
                if (!chosen[static_cast<std::size_t>(i)]) {
                    next = i;
                    break;
                }
            }
            if (next < 0) next = 0;
        }
        centroids.col(c) = e.col(next);
        chosen[static_cast<std::size_t>(next)] = true;
    }

    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (int iter = 0; iter < 300; ++iter) {
        bool changed = false;
        for (Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d2 = (e.col(i) - centroids.col(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d2 = (e.col(i) - centroids.col(c)).squaredNorm();
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = c;
                }
            }
            if (labels[static_cast<std::size_t>(i)] != best) {
                labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        if (!changed) break;

        Matrix sums = Matrix::Zero(e.rows(), k);
        std::vector<Index> counts(static_cast<std::size_t>(k), 0);
        for (Index i = 0; i < n; ++i) {
            sums.col(labels[static_cast<std::size_t>(i)]) += e.col(i);
            ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centroids.col(c) =
                    sums.col(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
        }
        // re-seed empty clusters at the point farthest from its centroid
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Index farthest = 0;
            double best_d2 = -1.0;
            for (Index i = 0; i < n; ++i) {
                const double d2 =
                    (e.col(i) - centroids.col(labels[static_cast<std::size_t>(i)]))
                        .squaredNorm();
                if (d2 > best_d2) {
                    best_d2 = d2;
                    farthest = i;
                }
            }
            centroids.col(c) = e.col(farthest);
            labels[static_cast<std::size_t>(farthest)] = c;
        }
    }
    return ClusterAssignment{std::move(labels), k};
}

std::vector<Index> hungarian_min_cost(const Matrix& cost) {
    const Index n = cost.rows();
    if (cost.cols() != n) throw DimensionError("cost matrix must be square");
    require_finite(cost, "cost matrix");

    std::vector<double> pot_row(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> pot_col(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<Index> matched_row(static_cast<std::size_t>(n) + 1, 0);
    std::vector<Index> path(static_cast<std::size_t>(n) + 1, 0);

    for (Index i = 1; i <= n; ++i) {
        matched_row[0] = i;
        Index j0 = 0;
        std::vector<double> min_slack(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<bool> visited(static_cast<std::size_t>(n) + 1, false);
        do {
            visited[static_cast<std::size_t>(j0)] = true;
            const Index i0 = matched_row[static_cast<std::size_t>(j0)];
            Index j1 = 0;
            double delta = kInf;
            for (Index j = 1; j <= n; ++j) {
                if (visited[static_cast<std::size_t>(j)]) continue;
                const double reduced = cost(i0 - 1, j - 1) -
                                       pot_row[static_cast<std::size_t>(i0)] -
                                       pot_col[static_cast<std::size_t>(j)];
                if (reduced < min_slack[static_cast<std::size_t>(j)]) {
                    min_slack[static_cast<std::size_t>(j)] = reduced;
                    path[static_cast<std::size_t>(j)] = j0;
                }
                if (min_slack[static_cast<std::size_t>(j)] < delta) {
                    delta = min_slack[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (Index j = 0; j <= n; ++j) {
                if (visited[static_cast<std::size_t>(j)]) {
                    pot_row[static_cast<std::size_t>(
                        matched_row[static_cast<std::size_t>(j)])] += delta;
                    pot_col[static_cast<std::size_t>(j)] -= delta;
                } else {
                    min_slack[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (matched_row[static_cast<std::size_t>(j0)] != 0);
        do {
            const Index j1 = path[static_cast<std::size_t>(j0)];
            matched_row[static_cast<std::size_t>(j0)] =
                matched_row[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<Index> row_to_col(static_cast<std::size_t>(n), -1);
    for (Index j = 1; j <= n; ++j) {
        if (matched_row[static_cast<std::size_t>(j)] > 0) {
            row_to_col[static_cast<std::size_t>(matched_row[static_cast<std::size_t>(j)] - 1)] =
                j - 1;
        }
    }
    return row_to_col;
}

double clustering_accuracy(const ClusterAssignment& pred, const std::vector<int>& truth) {
    const std::size_t n = pred.labels.size();
    if (n != truth.size()) {
        throw DimensionError("prediction and truth label counts differ");
    }
    if (n == 0) throw InputError("cannot score empty assignments");
    for (int label : pred.labels) {
        if (label < 0 || label >= pred.k) {
            throw InputError("cluster label out of [0, k)");
        }
    }
    std::unordered_map<int, Index> truth_ids;
    for (int label : truth) {
        truth_ids.emplace(label, static_cast<Index>(truth_ids.size()));
    }
    const Index size = std::max<Index>(pred.k, static_cast<Index>(truth_ids.size()));
    Matrix confusion = Matrix::Zero(size, size);
    for (std::size_t i = 0; i < n; ++i) {
        confusion(pred.labels[i], truth_ids.at(truth[i])) += 1.0;
    }
    const auto assignment = hungarian_min_cost(-confusion);
    double matched = 0.0;
    for (Index r = 0; r < size; ++r) {
        matched += confusion(r, assignment[static_cast<std::size_t>(r)]);
    }
    return matched / static_cast<double>(n);
}

double scatter_ratio(const Matrix& e, const ClusterAssignment& assign) {
    const Index n = e.cols();
    if (static_cast<Index>(assign.labels.size()) != n) {
        throw DimensionError("assignment covers " + std::to_string(assign.labels.size()) +
                             " samples, embedding has " + std::to_string(n));
    }
    const double total_scatter = e.squaredNorm();
    Matrix sums = Matrix::Zero(e.rows(), assign.k);
    std::vector<Index> counts(static_cast<std::size_t>(assign.k), 0);
    for (Index i = 0; i < n; ++i) {
        const int c = assign.labels[static_cast<std::size_t>(i)];
        if (c < 0 || c >= assign.k) throw InputError("cluster label out of [0, k)");
        sums.col(c) += e.col(i);
        ++counts[static_cast<std::size_t>(c)];
    }
    double within = 0.0;
    for (Index i = 0; i < n; ++i) {
        const int c = assign.labels[static_cast<std::size_t>(i)];
        const Vector mean = sums.col(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        within += (e.col(i) - mean).squaredNorm();
    }
    if (within == 0.0) return kInf;
    return total_scatter / within;
}

PcaResult pca_dual(const Matrix& concat_centered, Index d) {
    require_finite(concat_centered, "data");
    const Index n = concat_centered.cols();
    const Index dim = concat_centered.rows();
    const double scale = std::max(1.0, concat_centered.cwiseAbs().maxCoeff());
    if (concat_centered.rowwise().mean().cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw InputError("data must be centered before PCA");
    }
    if (d < 1 || d > std::min(n, dim)) {
        throw DimensionError("d=" + std::to_string(d) + " exceeds min(N, D) = " +
                             std::to_string(std::min(n, dim)));
    }
    Matrix gram = concat_centered.transpose() * concat_centered;
    const EigenResult top = sym_eig_topd(gram, d);

    PcaResult out;
    out.eigenvalues = top.values;
    out.scores.resize(d, n);
    out.loadings = Matrix::Zero(dim, d);
    const double rank_tol = 1e-12 * std::max(1.0, top.values.cwiseAbs().maxCoeff());
    for (Index i = 0; i < d; ++i) {
        const double lambda = std::max(top.values[i], 0.0);
        const double root = std::sqrt(lambda);
        out.scores.row(i) = root * top.vectors.col(i).transpose();
        if (lambda > rank_tol) {
            out.loadings.col(i) = concat_centered * top.vectors.col(i) / root;
        }
    }
    return out;
}

Matrix pca_baseline(const Matrix& concat_centered, Index d) {
    return pca_dual(concat_centered, d).scores;
}

std::vector<int> knn_classify(const Matrix& train_embedding,
                              const std::vector<int>& train_labels,
                              const Matrix& test_embedding, int neighbors) {
    const Index n_train = train_embedding.cols();
    if (static_cast<Index>(train_labels.size()) != n_train) {
        throw DimensionError("one label per training sample required");
    }
    if (train_embedding.rows() != test_embedding.rows()) {
        throw DimensionError("train and test embeddings have different dimensions");
    }
    if (neighbors < 1 || static_cast<Index>(neighbors) > n_train) {
        throw ConfigurationError("neighbor count must lie in [1, #train]");
    }
    std::vector<int> predicted;
    predicted.reserve(static_cast<std::size_t>(test_embedding.cols()));
    std::vector<Index> order(static_cast<std::size_t>(n_train));
    for (Index t = 0; t < test_embedding.cols(); ++t) {
        std::vector<double> d2(static_cast<std::size_t>(n_train));
        for (Index i = 0; i < n_train; ++i) {
            d2[static_cast<std::size_t>(i)] =
                (train_embedding.col(i) - test_embedding.col(t)).squaredNorm();
        }
        std::iota(order.begin(), order.end(), Index{0});
        std::partial_sort(order.begin(), order.begin() + neighbors, order.end(),
                          [&](Index a, Index b) {
                              const double da = d2[static_cast<std::size_t>(a)];
                              const double db = d2[static_cast<std::size_t>(b)];
                              if (da != db) return da < db;
                              return a < b;
                          });
        std::unordered_map<int, int> votes;
        for (int v = 0; v < neighbors; ++v) {
            ++votes[train_labels[static_cast<std::size_t>(order[static_cast<std::size_t>(v)])]];
        }
        int best_label = 0;
        int best_count = -1;
        for (const auto& [label, count] : votes) {
            if (count > best_count || (count == best_count && label < best_label)) {
                best_label = label;
                best_count = count;
            }
        }
        predicted.push_back(best_label);
    }
    return predicted;
}

}  // namespace mvgcca
