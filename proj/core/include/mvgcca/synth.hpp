#pragma once

#include <cstdint>
#include <vector>

#include "mvgcca/dataset.hpp"
#include "mvgcca/graph.hpp"

namespace mvgcca {

/// Synthetic multiview generator: N common sources drawn from k Gaussian
/// clusters, a planted community graph over the samples (intra-cluster
/// edges of weight 1, none across clusters), and per-view observations
/// X_m = F_m S + noise with random linear maps F_m (D_m x rho).
struct SynthSpec {
    Index n = 200;
    Index m = 3;
    Index rho = 3;
    std::vector<Index> dims;      // D_m per view; each must be >= rho
    double noise_std = 0.5;
    int clusters = 3;
    double center_spread = 3.0;   // cluster centers ~ N(0, spread^2 I)
    double within_std = 0.5;      // source scatter around its center
    std::uint64_t seed = 0;
    bool identity_maps = false;   // F_m = I; requires D_m == rho
};

struct SynthData {
    MultiviewDataset data;
    GraphAdjacency graph;
    std::vector<int> labels;
    Matrix sources;  // rho x N
};

SynthData generate(const SynthSpec& spec);

}  // namespace mvgcca
