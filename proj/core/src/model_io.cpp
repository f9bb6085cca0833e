#include "mvgcca/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "mvgcca/io.hpp"

namespace mvgcca {

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& values) {
    json rows = json::array();
    for (Index r = 0; r < values.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < values.cols(); ++c) {
            row.push_back(values(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty()) {
        throw IoError(std::string("model file: ") + what + " must be a non-empty array");
    }
    const auto r = rows.size();
    const auto c = rows.front().size();
    Matrix out(static_cast<Index>(r), static_cast<Index>(c));
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c) {
            throw IoError(std::string("model file: ragged rows in ") + what);
        }
        for (std::size_t j = 0; j < c; ++j) {
            out(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j].get<double>();
        }
    }
    return out;
}

json vector_to_json(const Vector& values) {
    json out = json::array();
    for (Index i = 0; i < values.size(); ++i) out.push_back(values[i]);
    return out;
}

Vector vector_from_json(const json& values, const char* what) {
    if (!values.is_array()) {
        throw IoError(std::string("model file: ") + what + " must be an array");
    }
    Vector out(static_cast<Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[static_cast<Index>(i)] = values[i].get<double>();
    }
    return out;
}

}  // namespace

std::string to_string(Variant variant) {
    switch (variant) {
        case Variant::mcca: return "mcca";
        case Variant::gmcca: return "gmcca";
        case Variant::gdmcca: return "gdmcca";
        case Variant::gkmcca: return "gkmcca";
        case Variant::pca: return "pca";
    }
    throw ConfigurationError("unknown variant");
}

Variant variant_from_string(const std::string& name) {
    if (name == "mcca") return Variant::mcca;
    if (name == "gmcca") return Variant::gmcca;
    if (name == "gdmcca") return Variant::gdmcca;
    if (name == "gkmcca") return Variant::gkmcca;
    if (name == "pca") return Variant::pca;
    throw ConfigurationError("unknown variant '" + name + "'");
}

void save_model(const ModelFile& model, const std::string& path) {
    json doc;
    doc["format"] = "mvgcca-model";
    doc["version"] = 1;
    doc["variant"] = to_string(model.variant);

    if (model.primal) {
        const PrimalModel& m = *model.primal;
        doc["d"] = m.d;
        doc["gamma"] = m.gamma;
        doc["eigenvalues"] = vector_to_json(m.eigenvalues);
        doc["sources"] = matrix_to_json(m.S_hat);
        json loadings = json::array();
        for (const Matrix& u : m.U) loadings.push_back(matrix_to_json(u));
        doc["loadings"] = std::move(loadings);
    } else if (model.dual) {
        const DualModel& m = *model.dual;
        doc["d"] = m.d;
        doc["gamma"] = m.gamma;
        doc["epsilon"] = m.epsilon;
        if (model.variant == Variant::gdmcca) {
            doc["cd_form"] = to_string(m.cd_form);
        }
        doc["eigenvalues"] = vector_to_json(m.eigenvalues);
        doc["sources"] = matrix_to_json(m.S_hat);
        json duals = json::array();
        for (const Matrix& a : m.A) duals.push_back(matrix_to_json(a));
        doc["duals"] = std::move(duals);
        if (m.kernel) {
            json kernel;
            json families = json::array();
            json sigmas = json::array();
            for (const KernelProvenance& p : *m.kernel) {
                families.push_back(to_string(p.family));
                sigmas.push_back(p.sigma);
            }
            kernel["family"] = std::move(families);
            kernel["sigma"] = std::move(sigmas);
            kernel["centered"] = true;
            doc["kernel"] = std::move(kernel);
        }
    } else if (model.pca) {
        const PcaModel& m = *model.pca;
        doc["d"] = m.d;
        doc["eigenvalues"] = vector_to_json(m.eigenvalues);
        doc["sources"] = matrix_to_json(m.scores);
        doc["loadings"] = json::array({matrix_to_json(m.loadings)});
    } else {
        throw StateError("model envelope is empty");
    }

    json train;
    train["num_views"] = model.train_dims.size();
    train["num_samples"] = model.train_samples;
    train["dims"] = model.train_dims;
    json hashes = json::array();
    for (std::uint64_t h : model.train_hashes) hashes.push_back(hash_string(h));
    train["hashes"] = std::move(hashes);
    json means = json::array();
    for (const Vector& mu : model.train_means) means.push_back(vector_to_json(mu));
    train["feature_means"] = std::move(means);
    doc["train"] = std::move(train);

    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw IoError(path + ": invalid JSON: " + e.what());
    }
    if (doc.value("format", "") != "mvgcca-model") {
        throw IoError(path + ": not a model file");
    }

    ModelFile model;
    model.variant = variant_from_string(doc.at("variant").get<std::string>());

    if (model.variant == Variant::mcca || model.variant == Variant::gmcca) {
        PrimalModel m;
        m.d = doc.at("d").get<Index>();
        m.gamma = doc.at("gamma").get<double>();
        m.eigenvalues = vector_from_json(doc.at("eigenvalues"), "eigenvalues");
        m.S_hat = matrix_from_json(doc.at("sources"), "sources");
        for (const auto& u : doc.at("loadings")) {
            m.U.push_back(matrix_from_json(u, "loadings"));
        }
        model.primal = std::move(m);
    } else if (model.variant == Variant::gdmcca || model.variant == Variant::gkmcca) {
        DualModel m;
        m.d = doc.at("d").get<Index>();
        m.gamma = doc.at("gamma").get<double>();
        m.epsilon = doc.at("epsilon").get<std::vector<double>>();
        if (doc.contains("cd_form")) {
            m.cd_form = cd_form_from_string(doc.at("cd_form").get<std::string>());
        }
        m.eigenvalues = vector_from_json(doc.at("eigenvalues"), "eigenvalues");
        m.S_hat = matrix_from_json(doc.at("sources"), "sources");
        for (const auto& a : doc.at("duals")) {
            m.A.push_back(matrix_from_json(a, "duals"));
        }
        if (doc.contains("kernel")) {
            const auto& kernel = doc.at("kernel");
            std::vector<KernelProvenance> provenance;
            const auto families = kernel.at("family").get<std::vector<std::string>>();
            const auto sigmas = kernel.at("sigma").get<std::vector<double>>();
            if (families.size() != sigmas.size()) {
                throw IoError(path + ": kernel family/sigma length mismatch");
            }
            for (std::size_t i = 0; i < families.size(); ++i) {
                provenance.push_back({kernel_family_from_string(families[i]), sigmas[i]});
            }
            m.kernel = std::move(provenance);
        }
        model.dual = std::move(m);
    } else {
        PcaModel m;
        m.d = doc.at("d").get<Index>();
        m.eigenvalues = vector_from_json(doc.at("eigenvalues"), "eigenvalues");
        m.scores = matrix_from_json(doc.at("sources"), "sources");
        m.loadings = matrix_from_json(doc.at("loadings").at(0), "loadings");
        model.pca = std::move(m);
    }

    const auto& train = doc.at("train");
    model.train_samples = train.at("num_samples").get<Index>();
    model.train_dims = train.at("dims").get<std::vector<Index>>();
    for (const auto& h : train.at("hashes")) {
        model.train_hashes.push_back(
            std::stoull(h.get<std::string>(), nullptr, 16));
    }
    for (const auto& mu : train.at("feature_means")) {
        model.train_means.push_back(vector_from_json(mu, "feature_means"));
    }
    return model;
}

void bind_train_data(ModelFile& model, const MultiviewDataset& raw_train) {
    if (!model.dual) {
        throw StateError("only dual models need training data rebound");
    }
    if (raw_train.num_views() != static_cast<Index>(model.train_dims.size()) ||
        raw_train.num_samples() != model.train_samples) {
        throw DimensionError("training data shape does not match the model");
    }
    for (std::size_t m = 0; m < raw_train.views.size(); ++m) {
        if (raw_train.views[m].rows() != model.train_dims[m]) {
            throw DimensionError("view " + std::to_string(m) +
                                 " dimension does not match the model");
        }
        if (m < model.train_hashes.size() &&
            matrix_hash(raw_train.views[m]) != model.train_hashes[m]) {
            throw InputError("view " + std::to_string(m) +
                             " does not hash to the training data this model was fit on");
        }
    }
    // fits run on centered views; rebuild that state from the stored means
    model.dual->train_data = std::make_shared<MultiviewDataset>(
        MultiviewDataset::from_views(subtract_means(raw_train.views, model.train_means),
                                     true));
}

}  // namespace mvgcca
