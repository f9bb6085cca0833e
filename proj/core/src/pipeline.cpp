#include "mvgcca/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "mvgcca/io.hpp"
#include "mvgcca/util.hpp"

namespace mvgcca {
namespace pipeline {

namespace {

void record_train_side(ModelFile& out, const MultiviewDataset& raw) {
    out.train_samples = raw.num_samples();
    for (const Matrix& x : raw.views) {
        out.train_dims.push_back(x.rows());
        out.train_hashes.push_back(matrix_hash(x));
    }
    out.train_means = feature_means(raw);
}

Matrix concat_views(const std::vector<Matrix>& views) {
    Index total = 0;
    for (const Matrix& x : views) total += x.rows();
    Matrix out(total, views.front().cols());
    Index offset = 0;
    for (const Matrix& x : views) {
        out.middleRows(offset, x.rows()) = x;
        offset += x.rows();
    }
    return out;
}

std::vector<KernelMatrix> build_centered_kernels(const FitConfig& config,
                                                 const MultiviewDataset& raw) {
    std::vector<KernelMatrix> kernels;
    kernels.reserve(raw.views.size());
    for (const Matrix& x : raw.views) {
        KernelMatrix kbar;
        if (config.kernel_family == KernelFamily::gaussian) {
            kbar = config.kernel_sigma ? gaussian_kernel(x, *config.kernel_sigma)
                                       : gaussian_kernel_auto(x);
        } else {
            kbar = linear_kernel(x);
        }
        kernels.push_back(center_kernel(kbar));
    }
    return kernels;
}

int distinct_labels(const std::vector<int>& labels) {
    return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

}  // namespace

ModelFile run_fit(const FitConfig& config, const MultiviewDataset& raw,
                  const GraphAdjacency* graph) {
    if (config.d < 1) throw ConfigurationError("d must be at least 1");
    const Index n = raw.num_samples();
    if (graph != nullptr && graph->size() != n) {
        throw DimensionError("graph has " + std::to_string(graph->size()) +
                             " nodes for " + std::to_string(n) + " samples");
    }
    const GraphAdjacency adj = graph != nullptr ? *graph : zero_graph(n);
    const GraphLaplacian lap = laplacian(adj);

    ModelFile out;
    out.variant = config.variant;
    record_train_side(out, raw);

    switch (config.variant) {
        case Variant::mcca:
            if (config.gamma != 0.0) {
                throw ConfigurationError("variant mcca is the gamma = 0 case; "
                                         "use gmcca for gamma > 0");
            }
            out.primal = fit_gmcca(raw, lap, 0.0, config.d);
            break;
        case Variant::gmcca:
            out.primal = fit_gmcca(raw, lap, config.gamma, config.d);
            break;
        case Variant::gdmcca:
            if (config.epsilon.empty()) {
                throw ConfigurationError("gdmcca needs an epsilon value");
            }
            out.dual = fit_gdmcca(raw, lap, config.gamma, config.epsilon, config.d,
                                  config.cd_form);
            break;
        case Variant::gkmcca: {
            if (config.epsilon.empty()) {
                throw ConfigurationError("gkmcca needs an epsilon value");
            }
            const auto kernels = build_centered_kernels(config, raw);
            out.dual = fit_gkmcca(kernels, lap, config.gamma, config.epsilon, config.d);
            break;
        }
        case Variant::pca: {
            Matrix concat = concat_views(raw.views);
            concat.colwise() -= concat.rowwise().mean().eval();
            PcaModel pca;
            PcaResult result = pca_dual(concat, config.d);
            pca.scores = std::move(result.scores);
            pca.loadings = std::move(result.loadings);
            pca.eigenvalues = std::move(result.eigenvalues);
            pca.d = config.d;
            out.pca = std::move(pca);
            break;
        }
    }
    return out;
}

const Vector& model_eigenvalues(const ModelFile& model) {
    if (model.primal) return model.primal->eigenvalues;
    if (model.dual) return model.dual->eigenvalues;
    if (model.pca) return model.pca->eigenvalues;
    throw StateError("model envelope is empty");
}

const Matrix& model_sources(const ModelFile& model) {
    if (model.primal) return model.primal->S_hat;
    if (model.dual) return model.dual->S_hat;
    if (model.pca) return model.pca->scores;
    throw StateError("model envelope is empty");
}

std::vector<Matrix> model_loadings(const ModelFile& model) {
    if (model.primal) return model.primal->U;
    if (model.dual) {
        if (model.dual->kernel) {
            throw StateError("kernel models have no finite-dimensional loadings");
        }
        if (!model.dual->train_data) {
            throw StateError("training views are not bound to this model");
        }
        std::vector<Matrix> u;
        u.reserve(model.dual->A.size());
        for (std::size_t m = 0; m < model.dual->A.size(); ++m) {
            u.push_back(model.dual->train_data->views[m] * model.dual->A[m]);
        }
        return u;
    }
    throw StateError("this model variant carries no per-view loadings");
}

Matrix embed_new_data(ModelFile& model, const std::vector<Matrix>& new_views_raw,
                      const MultiviewDataset* raw_train, bool apply_centering) {
    if (new_views_raw.size() != model.train_dims.size()) {
        throw DimensionError("got " + std::to_string(new_views_raw.size()) +
                             " views for a " + std::to_string(model.train_dims.size()) +
                             "-view model");
    }
    for (std::size_t m = 0; m < new_views_raw.size(); ++m) {
        if (new_views_raw[m].rows() != model.train_dims[m]) {
            throw DimensionError("view " + std::to_string(m) + " has " +
                                 std::to_string(new_views_raw[m].rows()) +
                                 " features, the model expects " +
                                 std::to_string(model.train_dims[m]));
        }
    }
    if (model.pca) {
        Matrix concat = concat_views(new_views_raw);
        if (apply_centering) {
            Index offset = 0;
            for (const Vector& mu : model.train_means) {
                concat.middleRows(offset, mu.size()).colwise() -= mu;
                offset += mu.size();
            }
        }
        return model.pca->loadings.transpose() * concat;
    }
    if (model.primal) {
        return transform_primal(*model.primal,
                                apply_centering
                                    ? subtract_means(new_views_raw, model.train_means)
                                    : new_views_raw);
    }
    if (model.dual) {
        if (model.dual->kernel) {
            if (raw_train == nullptr) {
                throw StateError("kernel transforms need the raw training views");
            }
            // centering happens in kernel space against the training kernel
            return transform_kernel(*model.dual, *raw_train, new_views_raw);
        }
        if (!model.dual->train_data) {
            if (raw_train == nullptr) {
                throw StateError("dual transforms need the training views rebound");
            }
            bind_train_data(model, *raw_train);
        }
        return transform_dual(*model.dual,
                              apply_centering
                                  ? subtract_means(new_views_raw, model.train_means)
                                  : new_views_raw);
    }
    throw StateError("model envelope is empty");
}

ClusteringReport evaluate_clustering(const Matrix& embedding, const std::vector<int>& labels,
                                     int k, std::uint64_t seed) {
    if (static_cast<Index>(labels.size()) != embedding.cols()) {
        throw DimensionError("one label per embedded sample required");
    }
    ClusteringReport report;
    report.k = k > 0 ? k : distinct_labels(labels);
    report.seed = seed;
    const ClusterAssignment assignment = kmeans(embedding, report.k, seed);
    report.accuracy = clustering_accuracy(assignment, labels);
    report.scatter = scatter_ratio(embedding, assignment);
    return report;
}

RankingReport evaluate_ranking(const Matrix& embedding, const std::vector<int>& labels,
                               const RankingConfig& config) {
    const Index n = embedding.cols();
    if (static_cast<Index>(labels.size()) != n) {
        throw DimensionError("one label per embedded sample required");
    }
    if (config.exemplars < 1) throw ConfigurationError("need at least one exemplar");
    if (config.runs < 1) throw ConfigurationError("need at least one run");
    if (config.top_l < 1) throw ConfigurationError("the cutoff L must be at least 1");
    const Index candidates_per_query = n - config.exemplars;
    if (candidates_per_query < 1) {
        throw ConfigurationError("exemplar count leaves no candidates to rank");
    }

    const Matrix z = zscore(embedding);
    std::map<int, std::vector<Index>> members;
    for (Index i = 0; i < n; ++i) members[labels[static_cast<std::size_t>(i)]].push_back(i);

    RankingReport report;
    report.effective_l = std::min(config.top_l, candidates_per_query);
    std::mt19937_64 rng(config.seed);
    Index skipped_small_classes = 0;

    for (int run = 0; run < config.runs; ++run) {
        std::vector<RankingResult> rankings;
        for (const auto& [label, ids] : members) {
            if (static_cast<Index>(ids.size()) < config.exemplars + 1) {
                ++skipped_small_classes;
                continue;
            }
            std::vector<Index> seeds;
            std::sample(ids.begin(), ids.end(), std::back_inserter(seeds),
                        config.exemplars, rng);
            Vector query = Vector::Zero(z.rows());
            std::set<Index> seed_set(seeds.begin(), seeds.end());
            for (Index s : seeds) query += z.col(s);
            query /= static_cast<double>(seeds.size());
            if (query.norm() == 0.0) {
                ++skipped_small_classes;
                continue;
            }
            Matrix candidates(z.rows(), candidates_per_query);
            std::vector<Index> candidate_ids;
            candidate_ids.reserve(static_cast<std::size_t>(candidates_per_query));
            for (Index i = 0; i < n; ++i) {
                if (seed_set.count(i)) continue;
                candidates.col(static_cast<Index>(candidate_ids.size())) = z.col(i);
                candidate_ids.push_back(i);
            }
            RankingResult ranking = rank_by_cosine(query, candidates);
            ranking.query_id = static_cast<Index>(label);
            std::vector<Index> relevant;
            for (std::size_t c = 0; c < candidate_ids.size(); ++c) {
                if (labels[static_cast<std::size_t>(candidate_ids[c])] == label) {
                    relevant.push_back(static_cast<Index>(c));
                }
            }
            set_relevance(ranking, relevant);
            rankings.push_back(std::move(ranking));
        }
        if (rankings.empty()) {
            throw ConfigurationError("no class has enough members for the requested "
                                     "exemplar count");
        }
        const RetrievalMetrics metrics = precision_recall_mrr(rankings, report.effective_l);
        report.precision += metrics.precision;
        report.recall += metrics.recall;
        report.mrr += metrics.mrr;
        report.skipped_queries += metrics.skipped_queries;
    }
    report.precision /= config.runs;
    report.recall /= config.runs;
    report.mrr /= config.runs;
    report.skipped_queries += skipped_small_classes;
    return report;
}

ClassificationReport evaluate_classification(const Matrix& train_embedding,
                                             const std::vector<int>& train_labels,
                                             const Matrix& test_embedding,
                                             const std::vector<int>& test_labels,
                                             int neighbors) {
    if (static_cast<Index>(test_labels.size()) != test_embedding.cols()) {
        throw DimensionError("one label per test sample required");
    }
    const std::vector<int> predicted =
        knn_classify(train_embedding, train_labels, test_embedding, neighbors);
    Index correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] == test_labels[i]) ++correct;
    }
    ClassificationReport report;
    report.neighbors = neighbors;
    report.accuracy = static_cast<double>(correct) / static_cast<double>(predicted.size());
    return report;
}

std::vector<SweepRow> run_bound_sweep(const MultiviewDataset& raw, const GraphAdjacency& adj,
                                      const std::vector<int>& labels,
                                      std::vector<double> gammas, const SweepConfig& config) {
    const Index n = raw.num_samples();
    if (static_cast<Index>(labels.size()) != n) {
        throw DimensionError("one label per sample required");
    }
    if (adj.size() != n) {
        throw DimensionError("graph size does not match the sample count");
    }
    if (gammas.empty()) throw ConfigurationError("gamma list is empty");
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
        throw ConfigurationError("train fraction must lie in (0, 1)");
    }
    for (double g : gammas) {
        if (g < 0.0) throw ConfigurationError("gamma values must be nonnegative");
    }
    std::stable_sort(gammas.begin(), gammas.end());

    // per-class split, seeded
    std::map<int, std::vector<Index>> members;
    for (Index i = 0; i < n; ++i) members[labels[static_cast<std::size_t>(i)]].push_back(i);
    std::mt19937_64 rng(config.split_seed);
    std::vector<Index> train_ids;
    std::vector<Index> test_ids;
    for (auto& [label, ids] : members) {
        if (ids.size() < 2) {
            throw ConfigurationError("class " + std::to_string(label) +
                                     " has fewer than two members; cannot split");
        }
        std::shuffle(ids.begin(), ids.end(), rng);
        auto n_train = static_cast<std::size_t>(
            config.train_fraction * static_cast<double>(ids.size()));
        n_train = std::clamp<std::size_t>(n_train, 1, ids.size() - 1);
        train_ids.insert(train_ids.end(), ids.begin(), ids.begin() + static_cast<long>(n_train));
        test_ids.insert(test_ids.end(), ids.begin() + static_cast<long>(n_train), ids.end());
    }
    std::sort(train_ids.begin(), train_ids.end());
    std::sort(test_ids.begin(), test_ids.end());

    const MultiviewDataset train_raw =
        MultiviewDataset::from_views(select_columns(raw.views, train_ids));
    const std::vector<Vector> means = feature_means(train_raw);
    const MultiviewDataset train = center_views(train_raw);
    const std::vector<Matrix> test_views =
        subtract_means(select_columns(raw.views, test_ids), means);
    std::vector<int> test_labels;
    test_labels.reserve(test_ids.size());
    for (Index id : test_ids) test_labels.push_back(labels[static_cast<std::size_t>(id)]);

    const GraphLaplacian train_lap = laplacian(induced_subgraph(adj, train_ids));
    const int k = config.kmeans_k > 0 ? config.kmeans_k : distinct_labels(labels);

    std::vector<SweepRow> rows(gammas.size());
    parallel_for(static_cast<Index>(gammas.size()), [&](Index i) {
        const double gamma = gammas[static_cast<std::size_t>(i)];
        const PrimalModel model = fit_gmcca(train, train_lap, gamma, config.d);
        const BoundReport bound = generalization_bound(model.U, train, config.delta);
        const Matrix test_embedding = transform_primal(model, test_views);
        const ClusterAssignment assignment =
            kmeans(test_embedding, k, config.kmeans_seed);
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        row.gamma = gamma;
        row.bound = bound.bound;
        row.g_bar = bound.g_bar;
        row.B = bound.B;
        row.R = bound.R;
        row.accuracy = clustering_accuracy(assignment, test_labels);
    });
    return rows;
}

void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "gamma,bound,g_bar,B,R,accuracy\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.gamma) << ',' << format_double(row.bound) << ','
            << format_double(row.g_bar) << ',' << format_double(row.B) << ','
            << format_double(row.R) << ',' << format_double(row.accuracy) << '\n';
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace pipeline
}  // namespace mvgcca
