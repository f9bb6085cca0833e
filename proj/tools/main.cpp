// mvgcca command line interface: fit / transform / evaluate / bound /
// sweep / graph build / synth, wired over the core library. Every
// subcommand reads an optional JSON config file (--config); command-line
// flags override config values. Errors leave as one JSON object on
// stderr and a nonzero exit code.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvgcca/graph.hpp"
#include "mvgcca/io.hpp"
#include "mvgcca/model_io.hpp"
#include "mvgcca/pipeline.hpp"
#include "mvgcca/synth.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace mvgcca;

// ---------------------------------------------------------------------------
// JSON config support for CLI11. Nested objects address subcommand
// options: {"fit": {"gamma": 0.05}}.

class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json doc;
        try {
            input >> doc;
        } catch (const json::exception& e) {
            throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        walk(doc, {}, items);
        return items;
    }

  private:
    static std::string scalar_to_string(const json& value) {
        if (value.is_string()) return value.get<std::string>();
        if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
        return value.dump();
    }

    static void walk(const json& node, std::vector<std::string> parents,
                     std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object()) {
                auto deeper = parents;
                deeper.push_back(key);
                walk(value, deeper, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& element : value) {
                    item.inputs.push_back(scalar_to_string(element));
                }
            } else {
                item.inputs.push_back(scalar_to_string(value));
            }
            items.push_back(std::move(item));
        }
    }
};

void warn(const std::string& message) {
    json note;
    note["warning"] = message;
    std::cerr << note.dump() << '\n';
}

void note_written(const std::vector<std::string>& paths) {
    json note;
    note["written"] = paths;
    std::cout << note.dump() << '\n';
}

void write_eigenvalue_csv(const Vector& values, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (Index i = 0; i < values.size(); ++i) {
        out << i << ',' << format_double(values[i]) << '\n';
    }
}

void write_json_file(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// shared option blocks

struct GraphSourceOptions {
    std::string graph_file;
    Index knn_k1 = 0;
    std::string knn_kernel = "gaussian";
    double knn_sigma = 0.0;  // 0 = automatic bandwidth
    Index supervised_k2 = 0;
    std::vector<std::string> combine_files;
    std::vector<double> combine_weights;
    std::string graph_data;   // matrix for knn/supervised construction
    std::string labels_file;  // supervised construction
};

void add_graph_source_options(CLI::App* cmd, GraphSourceOptions& opts) {
    cmd->add_option("--graph", opts.graph_file, "graph TSV edge list");
    cmd->add_option("--knn-k1", opts.knn_k1,
                    "build a k-NN kernel graph with this neighborhood size");
    cmd->add_option("--knn-kernel", opts.knn_kernel, "kernel for --knn-k1")
        ->check(CLI::IsMember({"gaussian", "linear"}));
    cmd->add_option("--knn-sigma", opts.knn_sigma,
                    "Gaussian bandwidth for --knn-k1 (0 = mean pairwise distance)");
    cmd->add_option("--supervised-k2", opts.supervised_k2,
                    "build a same-label cosine graph with this neighborhood size");
    cmd->add_option("--graph-data", opts.graph_data,
                    "CSV whose rows are samples, used for graph construction "
                    "(default: the --data views)");
    cmd->add_option("--graph-labels", opts.labels_file,
                    "labels CSV for --supervised-k2");
    cmd->add_option("--combine-graphs", opts.combine_files,
                    "TSV edge lists to combine")
        ->delimiter(',');
    cmd->add_option("--combine-weights", opts.combine_weights,
                    "weights for --combine-graphs")
        ->delimiter(',');
}

KernelMatrix kernel_for(const std::string& family, double sigma, const Matrix& x) {
    if (kernel_family_from_string(family) == KernelFamily::linear) {
        return linear_kernel(x);
    }
    return sigma > 0.0 ? gaussian_kernel(x, sigma) : gaussian_kernel_auto(x);
}

// Resolves the configured graph source against the loaded dataset;
// empty when no source was configured (zero graph).
std::optional<GraphAdjacency> resolve_graph(const GraphSourceOptions& opts,
                                            const MultiviewDataset& data) {
    int sources = 0;
    sources += !opts.graph_file.empty();
    sources += opts.knn_k1 > 0;
    sources += opts.supervised_k2 > 0;
    sources += !opts.combine_files.empty();
    if (sources > 1) {
        throw ConfigurationError("choose at most one graph source "
                                 "(--graph / --knn-k1 / --supervised-k2 / "
                                 "--combine-graphs)");
    }
    const Index n = data.num_samples();
    if (!opts.graph_file.empty()) {
        return load_edge_list(opts.graph_file, n);
    }
    if (opts.knn_k1 > 0) {
        if (!opts.graph_data.empty()) {
            const Matrix x = load_csv_matrix(opts.graph_data).transpose();
            return knn_kernel_graph(kernel_for(opts.knn_kernel, opts.knn_sigma, x),
                                    opts.knn_k1);
        }
        // per-view graphs summed with unit weights
        std::vector<GraphAdjacency> graphs;
        for (const Matrix& x : data.views) {
            graphs.push_back(knn_kernel_graph(
                kernel_for(opts.knn_kernel, opts.knn_sigma, x), opts.knn_k1));
        }
        return combine_adjacency(graphs, std::vector<double>(graphs.size(), 1.0));
    }
    if (opts.supervised_k2 > 0) {
        if (opts.labels_file.empty()) {
            throw ConfigurationError("--supervised-k2 needs --graph-labels");
        }
        Matrix x;
        if (!opts.graph_data.empty()) {
            x = load_csv_matrix(opts.graph_data).transpose();
        } else {
            Index total = 0;
            for (const Matrix& v : data.views) total += v.rows();
            x.resize(total, n);
            Index offset = 0;
            for (const Matrix& v : data.views) {
                x.middleRows(offset, v.rows()) = v;
                offset += v.rows();
            }
        }
        const std::vector<int> labels = load_labels(opts.labels_file, x.cols());
        return supervised_cosine_graph(x, labels, opts.supervised_k2);
    }
    if (!opts.combine_files.empty()) {
        std::vector<GraphAdjacency> graphs;
        for (const std::string& file : opts.combine_files) {
            graphs.push_back(load_edge_list(file, n));
        }
        std::vector<double> weights = opts.combine_weights;
        if (weights.empty()) weights.assign(graphs.size(), 1.0);
        return combine_adjacency(graphs, weights);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// subcommand payloads

struct FitOptions {
    std::vector<std::string> data;
    std::string variant = "gmcca";
    Index d = 2;
    double gamma = 0.0;
    std::vector<double> epsilon;
    std::string cd_form = "derived";
    std::string kernel = "gaussian";
    double sigma = 0.0;
    std::string out = "model.json";
    std::string eig_out;
    GraphSourceOptions graph;
};

void run_fit_command(const FitOptions& opts) {
    const MultiviewDataset raw = load_dataset(opts.data);
    const auto graph = resolve_graph(opts.graph, raw);

    pipeline::FitConfig config;
    config.variant = variant_from_string(opts.variant);
    config.d = opts.d;
    config.gamma = opts.gamma;
    config.epsilon = opts.epsilon;
    config.cd_form = cd_form_from_string(opts.cd_form);
    config.kernel_family = kernel_family_from_string(opts.kernel);
    if (opts.sigma > 0.0) config.kernel_sigma = opts.sigma;

    const ModelFile model = pipeline::run_fit(config, raw, graph ? &*graph : nullptr);
    save_model(model, opts.out);
    const std::string eig_path =
        opts.eig_out.empty() ? opts.out + ".eigenvalues.csv" : opts.eig_out;
    write_eigenvalue_csv(pipeline::model_eigenvalues(model), eig_path);
    note_written({opts.out, eig_path});
}

struct TransformOptions {
    std::string model;
    std::vector<std::string> data;
    std::vector<std::string> train_data;
    bool raw = false;
    std::string out = "embedding.csv";
};

void run_transform_command(const TransformOptions& opts) {
    ModelFile model = load_model(opts.model);
    const MultiviewDataset views = load_dataset(opts.data);
    std::optional<MultiviewDataset> train;
    if (!opts.train_data.empty()) train = load_dataset(opts.train_data);
    const Matrix embedding = pipeline::embed_new_data(
        model, views.views, train ? &*train : nullptr, !opts.raw);
    save_csv_matrix(embedding.transpose(), opts.out);
    note_written({opts.out});
}

struct BoundOptions {
    std::string model;
    std::vector<std::string> data;
    std::vector<std::string> train_data;
    double delta = 0.1;
    bool raw = false;
    std::string out = "bound.json";
};

void run_bound_command(const BoundOptions& opts) {
    ModelFile model = load_model(opts.model);
    if (!opts.train_data.empty()) {
        bind_train_data(model, load_dataset(opts.train_data));
    }
    const std::vector<Matrix> loadings = pipeline::model_loadings(model);
    const MultiviewDataset raw = load_dataset(opts.data);
    const MultiviewDataset data = MultiviewDataset::from_views(
        opts.raw ? raw.views : subtract_means(raw.views, model.train_means));
    const BoundReport report = generalization_bound(loadings, data, opts.delta);

    json doc;
    doc["delta"] = report.delta;
    doc["g_bar"] = report.g_bar;
    doc["trace_term"] = report.trace_term;
    doc["deviation_term"] = report.deviation_term;
    doc["B"] = report.B;
    doc["R"] = report.R;
    doc["bound"] = report.bound;
    write_json_file(doc, opts.out);
    note_written({opts.out});
}

struct EvaluateOptions {
    std::string task;
    std::string model;
    std::string labels;
    std::vector<std::string> data;
    std::vector<std::string> train_data;
    std::vector<std::string> test_data;
    std::string train_labels;
    std::string test_labels;
    int k = 0;
    Index top_l = 10;
    int exemplars = 5;
    int runs = 1;
    int neighbors = 1;
    std::uint64_t seed = 0;
    std::string out = "metrics.json";
};

Matrix evaluation_embedding(ModelFile& model, const EvaluateOptions& opts) {
    if (opts.data.empty()) {
        return pipeline::model_sources(model);
    }
    const MultiviewDataset views = load_dataset(opts.data);
    std::optional<MultiviewDataset> train;
    if (!opts.train_data.empty()) train = load_dataset(opts.train_data);
    return pipeline::embed_new_data(model, views.views, train ? &*train : nullptr);
}

void run_evaluate_command(const EvaluateOptions& opts) {
    ModelFile model = load_model(opts.model);
    json doc;
    doc["task"] = opts.task;

    if (opts.task == "clustering") {
        if (opts.labels.empty()) {
            throw ConfigurationError("clustering needs --labels");
        }
        const Matrix embedding = evaluation_embedding(model, opts);
        const std::vector<int> labels = load_labels(opts.labels, embedding.cols());
        const auto report =
            pipeline::evaluate_clustering(embedding, labels, opts.k, opts.seed);
        doc["accuracy"] = report.accuracy;
        doc["scatter_ratio"] = report.scatter;
        doc["parameters"] = json{{"k", report.k}, {"seed", report.seed}};
    } else if (opts.task == "ranking") {
        if (opts.labels.empty()) {
            throw ConfigurationError("ranking needs --labels");
        }
        const Matrix embedding = evaluation_embedding(model, opts);
        const std::vector<int> labels = load_labels(opts.labels, embedding.cols());
        pipeline::RankingConfig config;
        config.top_l = opts.top_l;
        config.exemplars = opts.exemplars;
        config.runs = opts.runs;
        config.seed = opts.seed;
        const auto report = pipeline::evaluate_ranking(embedding, labels, config);
        if (report.effective_l != opts.top_l) {
            warn("L clamped to the candidate count: " +
                 std::to_string(report.effective_l));
        }
        if (report.skipped_queries > 0) {
            warn(std::to_string(report.skipped_queries) +
                 " queries skipped (no relevant candidates)");
        }
        doc["precision_at_L"] = report.precision;
        doc["recall_at_L"] = report.recall;
        doc["mrr"] = report.mrr;
        doc["parameters"] = json{{"L", report.effective_l},
                                 {"exemplars", opts.exemplars},
                                 {"runs", opts.runs},
                                 {"seed", opts.seed},
                                 {"skipped_queries", report.skipped_queries}};
    } else if (opts.task == "classification") {
        if (opts.train_data.empty() || opts.test_data.empty() ||
            opts.train_labels.empty() || opts.test_labels.empty()) {
            throw ConfigurationError("classification needs --train-data, "
                                     "--train-labels, --test-data, --test-labels");
        }
        const MultiviewDataset train_views = load_dataset(opts.train_data);
        const MultiviewDataset test_views = load_dataset(opts.test_data);
        const Matrix train_embedding =
            pipeline::embed_new_data(model, train_views.views, &train_views);
        const Matrix test_embedding =
            pipeline::embed_new_data(model, test_views.views, &train_views);
        const std::vector<int> train_labels =
            load_labels(opts.train_labels, train_embedding.cols());
        const std::vector<int> test_labels =
            load_labels(opts.test_labels, test_embedding.cols());
        const auto report = pipeline::evaluate_classification(
            train_embedding, train_labels, test_embedding, test_labels,
            opts.neighbors);
        doc["accuracy"] = report.accuracy;
        doc["parameters"] = json{{"neighbors", report.neighbors}};
    } else {
        throw ConfigurationError("unknown task '" + opts.task + "'");
    }
    write_json_file(doc, opts.out);
    note_written({opts.out});
}

struct SweepOptions {
    std::vector<std::string> data;
    std::string graph_file;
    std::string labels;
    std::vector<double> gammas{0.0, 0.01, 0.1, 1.0, 10.0};
    Index d = 3;
    double delta = 0.1;
    double train_frac = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t kmeans_seed = 0;
    int k = 0;
    std::string out = "sweep.csv";
};

void run_sweep_command(const SweepOptions& opts) {
    const MultiviewDataset raw = load_dataset(opts.data);
    const std::vector<int> labels = load_labels(opts.labels, raw.num_samples());
    const GraphAdjacency graph =
        opts.graph_file.empty()
            ? zero_graph(raw.num_samples())
            : load_edge_list(opts.graph_file, raw.num_samples());
    pipeline::SweepConfig config;
    config.d = opts.d;
    config.delta = opts.delta;
    config.train_fraction = opts.train_frac;
    config.split_seed = opts.seed;
    config.kmeans_seed = opts.kmeans_seed;
    config.kmeans_k = opts.k;
    const auto rows = pipeline::run_bound_sweep(raw, graph, labels, opts.gammas, config);
    pipeline::save_sweep_csv(rows, opts.out);
    note_written({opts.out});
}

struct GraphBuildOptions {
    std::string mode;
    std::vector<std::string> data;
    std::string labels;
    Index k1 = 10;
    Index k2 = 1;
    std::string kernel = "gaussian";
    double sigma = 0.0;
    std::vector<std::string> inputs;
    std::vector<double> weights;
    Index n = 0;
    std::string out = "graph.tsv";
};

void run_graph_build_command(const GraphBuildOptions& opts) {
    GraphAdjacency result = zero_graph(1);
    if (opts.mode == "knn") {
        if (opts.data.empty()) throw ConfigurationError("knn mode needs --data");
        std::vector<GraphAdjacency> graphs;
        for (const std::string& path : opts.data) {
            const Matrix x = load_csv_matrix(path).transpose();
            graphs.push_back(
                knn_kernel_graph(kernel_for(opts.kernel, opts.sigma, x), opts.k1));
        }
        result = combine_adjacency(graphs, std::vector<double>(graphs.size(), 1.0));
    } else if (opts.mode == "supervised") {
        if (opts.data.size() != 1 || opts.labels.empty()) {
            throw ConfigurationError("supervised mode needs one --data file and "
                                     "--labels");
        }
        const Matrix x = load_csv_matrix(opts.data.front()).transpose();
        const std::vector<int> labels = load_labels(opts.labels, x.cols());
        result = supervised_cosine_graph(x, labels, opts.k2);
    } else if (opts.mode == "combine") {
        if (opts.inputs.empty() || opts.n < 1) {
            throw ConfigurationError("combine mode needs --inputs and --n");
        }
        std::vector<GraphAdjacency> graphs;
        for (const std::string& path : opts.inputs) {
            graphs.push_back(load_edge_list(path, opts.n));
        }
        std::vector<double> weights = opts.weights;
        if (weights.empty()) weights.assign(graphs.size(), 1.0);
        result = combine_adjacency(graphs, weights);
    } else {
        throw ConfigurationError("unknown graph mode '" + opts.mode + "'");
    }
    save_edge_list(result, opts.out);
    note_written({opts.out});
}

struct SynthOptions {
    std::string out_dir = ".";
    Index n = 200;
    Index views = 3;
    Index rho = 3;
    std::vector<Index> dims;
    double noise = 0.5;
    int clusters = 3;
    double spread = 3.0;
    double within = 0.5;
    std::uint64_t seed = 0;
    bool identity_maps = false;
};

void run_synth_command(const SynthOptions& opts) {
    SynthSpec spec;
    spec.n = opts.n;
    spec.m = opts.views;
    spec.rho = opts.rho;
    spec.dims = opts.dims.empty()
                    ? std::vector<Index>(static_cast<std::size_t>(opts.views),
                                         std::max<Index>(opts.rho, 10))
                    : opts.dims;
    spec.noise_std = opts.noise;
    spec.clusters = opts.clusters;
    spec.center_spread = opts.spread;
    spec.within_std = opts.within;
    spec.seed = opts.seed;
    spec.identity_maps = opts.identity_maps;

    const SynthData synth = generate(spec);
    std::filesystem::create_directories(opts.out_dir);
    std::vector<std::string> written;
    for (Index m = 0; m < spec.m; ++m) {
        written.push_back(opts.out_dir + "/view_" + std::to_string(m + 1) + ".csv");
    }
    save_dataset(synth.data, written);
    const std::string graph_path = opts.out_dir + "/graph.tsv";
    save_edge_list(synth.graph, graph_path);
    written.push_back(graph_path);
    const std::string labels_path = opts.out_dir + "/labels.csv";
    save_labels(synth.labels, labels_path);
    written.push_back(labels_path);
    const std::string sources_path = opts.out_dir + "/sources.csv";
    save_csv_matrix(synth.sources.transpose(), sources_path);
    written.push_back(sources_path);
    note_written(written);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-regularized multiview canonical correlation analysis"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "JSON config file (given before the subcommand); keys nest by "
                   "subcommand, e.g. {\"fit\": {\"gamma\": 0.05}}; command-line "
                   "flags override config values");
    app.allow_config_extras(CLI::config_extras_mode::error);

    auto fit_opts = std::make_shared<FitOptions>();
    CLI::App* fit = app.add_subcommand("fit", "fit a model and write its JSON envelope");
    fit->add_option("--data", fit_opts->data, "one CSV per view (rows = samples)")
        ->required();
    fit->add_option("--variant", fit_opts->variant,
                    "mcca | gmcca | gdmcca | gkmcca | pca")
        ->check(CLI::IsMember({"mcca", "gmcca", "gdmcca", "gkmcca", "pca"}));
    fit->add_option("--d", fit_opts->d, "embedding dimension");
    fit->add_option("--gamma", fit_opts->gamma, "graph regularization weight");
    fit->add_option("--epsilon", fit_opts->epsilon,
                    "ridge weight(s); scalar or one per view")
        ->delimiter(',');
    fit->add_option("--cd-form", fit_opts->cd_form,
                    "dual matrix form: derived (default) or printed")
        ->check(CLI::IsMember({"printed", "derived"}));
    fit->add_option("--kernel", fit_opts->kernel, "gkmcca kernel family")
        ->check(CLI::IsMember({"gaussian", "linear"}));
    fit->add_option("--sigma", fit_opts->sigma,
                    "gkmcca Gaussian bandwidth (0 = mean pairwise distance)");
    fit->add_option("--out", fit_opts->out, "model JSON path");
    fit->add_option("--eig-out", fit_opts->eig_out,
                    "eigenvalue table CSV (default: <out>.eigenvalues.csv)");
    add_graph_source_options(fit, fit_opts->graph);
    fit->callback([fit_opts] { run_fit_command(*fit_opts); });

    auto transform_opts = std::make_shared<TransformOptions>();
    CLI::App* transform =
        app.add_subcommand("transform", "embed new samples with a fitted model");
    transform->add_option("--model", transform_opts->model, "model JSON")->required();
    transform->add_option("--data", transform_opts->data, "views to embed")->required();
    transform->add_option("--train-data", transform_opts->train_data,
                          "training views (dual/kernel models)");
    transform->add_flag("--raw", transform_opts->raw,
                        "skip subtracting the stored training feature means");
    transform->add_option("--out", transform_opts->out, "embedding CSV");
    transform->callback([transform_opts] { run_transform_command(*transform_opts); });

    auto bound_opts = std::make_shared<BoundOptions>();
    CLI::App* bound =
        app.add_subcommand("bound", "generalization-bound report for a fitted model");
    bound->add_option("--model", bound_opts->model, "model JSON")->required();
    bound->add_option("--data", bound_opts->data, "views to evaluate on")->required();
    bound->add_option("--train-data", bound_opts->train_data,
                      "training views (gdmcca models)");
    bound->add_option("--delta", bound_opts->delta, "confidence level in (0,1)");
    bound->add_flag("--raw", bound_opts->raw,
                    "skip subtracting the stored training feature means");
    bound->add_option("--out", bound_opts->out, "report JSON path");
    bound->callback([bound_opts] { run_bound_command(*bound_opts); });

    auto evaluate_opts = std::make_shared<EvaluateOptions>();
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "task metrics in a model's embedding space");
    evaluate->add_option("--task", evaluate_opts->task,
                         "clustering | ranking | classification")
        ->required();
    evaluate->add_option("--model", evaluate_opts->model, "model JSON")->required();
    evaluate->add_option("--labels", evaluate_opts->labels,
                         "labels CSV for clustering/ranking");
    evaluate->add_option("--data", evaluate_opts->data,
                         "views to embed (default: the stored training sources)");
    evaluate->add_option("--train-data", evaluate_opts->train_data,
                         "training views (dual/kernel models, classification)");
    evaluate->add_option("--test-data", evaluate_opts->test_data,
                         "held-out views (classification)");
    evaluate->add_option("--train-labels", evaluate_opts->train_labels,
                         "labels for --train-data");
    evaluate->add_option("--test-labels", evaluate_opts->test_labels,
                         "labels for --test-data");
    evaluate->add_option("--k", evaluate_opts->k,
                         "cluster count (0 = number of distinct labels)");
    evaluate->add_option("--top", evaluate_opts->top_l, "ranking cutoff L");
    evaluate->add_option("--exemplars", evaluate_opts->exemplars,
                         "seed samples per ranking query");
    evaluate->add_option("--runs", evaluate_opts->runs, "ranking repetitions");
    evaluate->add_option("--neighbors", evaluate_opts->neighbors,
                         "j for the j-NN classification vote");
    evaluate->add_option("--seed", evaluate_opts->seed, "RNG seed");
    evaluate->add_option("--out", evaluate_opts->out, "metrics JSON path");
    evaluate->callback([evaluate_opts] { run_evaluate_command(*evaluate_opts); });

    auto sweep_opts = std::make_shared<SweepOptions>();
    CLI::App* sweep = app.add_subcommand(
        "sweep", "bound-vs-gamma table with test clustering accuracy");
    sweep->add_option("--data", sweep_opts->data, "one CSV per view")->required();
    sweep->add_option("--graph", sweep_opts->graph_file, "graph TSV edge list");
    sweep->add_option("--labels", sweep_opts->labels, "labels CSV")->required();
    sweep->add_option("--gammas", sweep_opts->gammas, "gamma grid")->delimiter(',');
    sweep->add_option("--d", sweep_opts->d, "embedding dimension");
    sweep->add_option("--delta", sweep_opts->delta, "confidence level");
    sweep->add_option("--train-frac", sweep_opts->train_frac,
                      "per-class training fraction");
    sweep->add_option("--seed", sweep_opts->seed, "split seed");
    sweep->add_option("--kmeans-seed", sweep_opts->kmeans_seed, "k-means seed");
    sweep->add_option("--k", sweep_opts->k, "cluster count (0 = distinct labels)");
    sweep->add_option("--out", sweep_opts->out, "sweep CSV path");
    sweep->callback([sweep_opts] { run_sweep_command(*sweep_opts); });

    CLI::App* graph_cmd = app.add_subcommand("graph", "graph utilities");
    graph_cmd->require_subcommand(1);
    auto build_opts = std::make_shared<GraphBuildOptions>();
    CLI::App* build = graph_cmd->add_subcommand("build", "construct a graph TSV");
    build->add_option("--mode", build_opts->mode, "knn | supervised | combine")
        ->required();
    build->add_option("--data", build_opts->data,
                      "sample CSVs (knn: one graph per file, summed)");
    build->add_option("--labels", build_opts->labels, "labels CSV (supervised)");
    build->add_option("--k1", build_opts->k1, "k-NN neighborhood size");
    build->add_option("--k2", build_opts->k2, "same-label neighborhood size");
    build->add_option("--kernel", build_opts->kernel, "kernel family for knn mode")
        ->check(CLI::IsMember({"gaussian", "linear"}));
    build->add_option("--sigma", build_opts->sigma,
                      "Gaussian bandwidth (0 = mean pairwise distance)");
    build->add_option("--inputs", build_opts->inputs, "TSV files (combine)")
        ->delimiter(',');
    build->add_option("--weights", build_opts->weights, "weights (combine)")
        ->delimiter(',');
    build->add_option("--n", build_opts->n, "node count (combine)");
    build->add_option("--out", build_opts->out, "output TSV path");
    build->callback([build_opts] { run_graph_build_command(*build_opts); });

    auto synth_opts = std::make_shared<SynthOptions>();
    CLI::App* synth = app.add_subcommand(
        "synth", "generate a synthetic multiview dataset with a planted graph");
    synth->add_option("--out-dir", synth_opts->out_dir, "output directory")->required();
    synth->add_option("--n", synth_opts->n, "sample count");
    synth->add_option("--views", synth_opts->views, "view count");
    synth->add_option("--rho", synth_opts->rho, "latent source dimension");
    synth->add_option("--dims", synth_opts->dims, "view dimensions")->delimiter(',');
    synth->add_option("--noise", synth_opts->noise, "observation noise std");
    synth->add_option("--clusters", synth_opts->clusters, "planted community count");
    synth->add_option("--spread", synth_opts->spread, "cluster center spread");
    synth->add_option("--within", synth_opts->within, "within-cluster source std");
    synth->add_option("--seed", synth_opts->seed, "RNG seed");
    synth->add_flag("--identity-maps", synth_opts->identity_maps,
                    "use identity view maps (requires D_m == rho)");
    synth->callback([synth_opts] { run_synth_command(*synth_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        json err;
        err["error"] = "cli_error";
        err["message"] = e.what();
        std::cerr << err.dump() << '\n';
        return e.get_exit_code();
    } catch (const Error& e) {
        json err;
        err["error"] = e.kind();
        err["message"] = e.what();
        std::cerr << err.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "internal_error";
        err["message"] = e.what();
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 0;
}
