#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvgcca/bounds.hpp"
#include "mvgcca/graph.hpp"
#include "mvgcca/metrics.hpp"
#include "mvgcca/model_io.hpp"

namespace mvgcca {
namespace pipeline {

struct FitConfig {
    Variant variant = Variant::gmcca;
    Index d = 2;
    double gamma = 0.0;
    std::vector<double> epsilon;                          // GDMCCA/GKMCCA
    CdForm cd_form = CdForm::derived;                     // GDMCCA
    KernelFamily kernel_family = KernelFamily::gaussian;  // GKMCCA
    std::optional<double> kernel_sigma;                   // empty = auto bandwidth
};

/// Dispatches to the requested variant. Graph may be null (treated as
/// the empty graph). Raw views are centered inside the fits; the model
/// envelope records the raw views' dimensions, hashes, and feature
/// means so held-out data can be handled consistently.
ModelFile run_fit(const FitConfig& config, const MultiviewDataset& raw,
                  const GraphAdjacency* graph);

const Vector& model_eigenvalues(const ModelFile& model);

/// The fitted shared representation (S_hat, or PCA scores).
const Matrix& model_sources(const ModelFile& model);

/// Per-view loadings for bound evaluation: the primal U_m, or for
/// GDMCCA the implied U_m = X_m A_m (training data must be bound).
std::vector<Matrix> model_loadings(const ModelFile& model);

/// Embeds new raw views with a fitted model. With apply_centering the
/// stored training feature means are subtracted first (kernel models
/// ignore the flag; their centering happens in kernel space). Dual and
/// kernel models need the raw training views; dual models get them
/// bound (hash-checked) as a side effect.
Matrix embed_new_data(ModelFile& model, const std::vector<Matrix>& new_views_raw,
                      const MultiviewDataset* raw_train, bool apply_centering = true);

struct ClusteringReport {
    double accuracy = 0.0;
    double scatter = 0.0;
    int k = 0;
    std::uint64_t seed = 0;
};

/// k <= 0 picks the number of distinct labels.
ClusteringReport evaluate_clustering(const Matrix& embedding, const std::vector<int>& labels,
                                     int k, std::uint64_t seed);

struct RankingConfig {
    Index top_l = 10;
    int exemplars = 5;
    int runs = 1;
    std::uint64_t seed = 0;
};

struct RankingReport {
    double precision = 0.0;
    double recall = 0.0;
    double mrr = 0.0;
    Index effective_l = 0;  // top_l clamped to the candidate count
    Index skipped_queries = 0;
};

/// Per label class: draw `exemplars` seed samples, query with the mean
/// of their z-scored embeddings, rank everyone else by cosine
/// similarity, and score same-label candidates as relevant. Metrics are
/// macro-averaged per query, then per run.
RankingReport evaluate_ranking(const Matrix& embedding, const std::vector<int>& labels,
                               const RankingConfig& config);

struct ClassificationReport {
    double accuracy = 0.0;
    int neighbors = 1;
};

ClassificationReport evaluate_classification(const Matrix& train_embedding,
                                             const std::vector<int>& train_labels,
                                             const Matrix& test_embedding,
                                             const std::vector<int>& test_labels,
                                             int neighbors);

struct SweepConfig {
    Index d = 3;
    double delta = 0.1;
    double train_fraction = 0.5;
    std::uint64_t split_seed = 0;
    std::uint64_t kmeans_seed = 0;
    int kmeans_k = 0;  // 0 = number of distinct labels
};

struct SweepRow {
    double gamma = 0.0;
    double bound = 0.0;
    double g_bar = 0.0;
    double B = 0.0;
    double R = 0.0;
    double accuracy = 0.0;
};

/// For each gamma (ascending): fit GMCCA on a per-class train split,
/// report the generalization bound on the training half, embed the test
/// half as sum_m U_m^T X_m^te, and score k-means clustering accuracy.
/// Sweep points run in parallel up to the thread budget; rows come back
/// ordered by gamma.
std::vector<SweepRow> run_bound_sweep(const MultiviewDataset& raw, const GraphAdjacency& adj,
                                      const std::vector<int>& labels,
                                      std::vector<double> gammas, const SweepConfig& config);

void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace pipeline
}  // namespace mvgcca
