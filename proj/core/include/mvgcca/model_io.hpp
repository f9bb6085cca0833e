#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvgcca/dual.hpp"
#include "mvgcca/mcca.hpp"
#include "mvgcca/metrics.hpp"

namespace mvgcca {

enum class Variant { mcca, gmcca, gdmcca, gkmcca, pca };

std::string to_string(Variant variant);
Variant variant_from_string(const std::string& name);

/// PCA fit over concatenated views, kept alongside the CCA variants so
/// the same file format serves every baseline.
struct PcaModel {
    Matrix scores;    // d x N
    Matrix loadings;  // (sum D_m) x d
    Vector eigenvalues;
    Index d = 0;
};

/// On-disk model envelope. Exactly one of primal/dual/pca is set.
/// Training-side dimensions, hashes (of the raw views as loaded), and
/// feature means travel with the model; transforms of held-out data and
/// rebinding of training data check against them.
struct ModelFile {
    Variant variant = Variant::gmcca;
    std::optional<PrimalModel> primal;
    std::optional<DualModel> dual;
    std::optional<PcaModel> pca;
    std::vector<Index> train_dims;
    Index train_samples = 0;
    std::vector<std::uint64_t> train_hashes;
    std::vector<Vector> train_means;
};

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

/// Re-attaches raw training views to a deserialized GDMCCA model after
/// verifying dimensions and hashes; transforms need them.
void bind_train_data(ModelFile& model, const MultiviewDataset& raw_train);

}  // namespace mvgcca
