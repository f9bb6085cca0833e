#include "mvgcca/synth.hpp"

#include <cmath>
#include <random>
#include <string>

namespace mvgcca {

namespace {

void validate(const SynthSpec& spec) {
    if (spec.n < 2) throw ConfigurationError("need at least two samples");
    if (spec.m < 1) throw ConfigurationError("need at least one view");
    if (spec.rho < 1) throw ConfigurationError("source dimension must be positive");
    if (spec.dims.size() != static_cast<std::size_t>(spec.m)) {
        throw ConfigurationError("expected " + std::to_string(spec.m) +
                                 " view dimensions, got " + std::to_string(spec.dims.size()));
    }
    for (Index dm : spec.dims) {
        if (dm < spec.rho) {
            throw ConfigurationError("every view dimension must be at least rho=" +
                                     std::to_string(spec.rho));
        }
        if (spec.identity_maps && dm != spec.rho) {
            throw ConfigurationError("identity maps require D_m == rho");
        }
    }
    if (spec.noise_std < 0.0) throw ConfigurationError("noise_std must be nonnegative");
    if (spec.clusters < 1 || static_cast<Index>(spec.clusters) > spec.n) {
        throw ConfigurationError("cluster count must lie in [1, N]");
    }
}

// Fills column-major in a fixed order so output is seed-reproducible.
void fill_gaussian(Matrix& out, std::mt19937_64& rng, std::normal_distribution<double>& g,
                   double scale) {
    for (Index j = 0; j < out.cols(); ++j) {
        for (Index i = 0; i < out.rows(); ++i) {
            out(i, j) = scale * g(rng);
        }
    }
}

}  // namespace

SynthData generate(const SynthSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SynthData out;
    out.labels.resize(static_cast<std::size_t>(spec.n));
    for (Index i = 0; i < spec.n; ++i) {
        out.labels[static_cast<std::size_t>(i)] = static_cast<int>(i % spec.clusters);
    }

    Matrix centers(spec.rho, spec.clusters);
    fill_gaussian(centers, rng, gauss, spec.center_spread);

    out.sources.resize(spec.rho, spec.n);
    for (Index j = 0; j < spec.n; ++j) {
        for (Index i = 0; i < spec.rho; ++i) {
            out.sources(i, j) = centers(i, out.labels[static_cast<std::size_t>(j)]) +
                                spec.within_std * gauss(rng);
        }
    }

    Matrix w = Matrix::Zero(spec.n, spec.n);
    for (Index i = 0; i < spec.n; ++i) {
        for (Index j = i + 1; j < spec.n; ++j) {
            if (out.labels[static_cast<std::size_t>(i)] ==
                out.labels[static_cast<std::size_t>(j)]) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    out.graph = GraphAdjacency::from_weights(std::move(w));

    std::vector<Matrix> views;
    views.reserve(static_cast<std::size_t>(spec.m));
    const double map_scale = 1.0 / std::sqrt(static_cast<double>(spec.rho));
    for (Index m = 0; m < spec.m; ++m) {
        const Index dm = spec.dims[static_cast<std::size_t>(m)];
        Matrix map;
        if (spec.identity_maps) {
            map = Matrix::Identity(dm, spec.rho);
        } else {
            map.resize(dm, spec.rho);
            fill_gaussian(map, rng, gauss, map_scale);
        }
        Matrix view = map * out.sources;
        if (spec.noise_std > 0.0) {
            Matrix noise(dm, spec.n);
            fill_gaussian(noise, rng, gauss, spec.noise_std);
            view += noise;
        }
        views.push_back(std::move(view));
    }
    out.data = MultiviewDataset::from_views(std::move(views));
    return out;
}

}  // namespace mvgcca
