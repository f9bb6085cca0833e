#include "mvgcca/bounds.hpp"

#include <cmath>
#include <string>

namespace mvgcca {

namespace {

void check_loadings(const std::vector<Matrix>& u, const MultiviewDataset& data) {
    if (u.size() != data.views.size()) {
        throw DimensionError("got " + std::to_string(u.size()) + " loading matrices for " +
                             std::to_string(data.views.size()) + " views");
    }
    for (std::size_t m = 0; m < u.size(); ++m) {
        if (u[m].rows() != data.views[m].rows()) {
            throw DimensionError("view " + std::to_string(m) + " feature count does not "
                                 "match its loading matrix");
        }
    }
}

// Per-sample diagonal kernel values k_m(n) = ||x_{m,n}||^2.
std::vector<Vector> diagonal_kernels(const MultiviewDataset& data) {
    std::vector<Vector> kappa;
    kappa.reserve(data.views.size());
    for (const Matrix& x : data.views) {
        kappa.push_back(x.colwise().squaredNorm());
    }
    return kappa;
}

}  // namespace

double empirical_g(const std::vector<Matrix>& u, const MultiviewDataset& data) {
    check_loadings(u, data);
    std::vector<Matrix> projections;
    projections.reserve(u.size());
    for (std::size_t m = 0; m < u.size(); ++m) {
        projections.push_back(u[m].transpose() * data.views[m]);
    }
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < projections.size(); ++m) {
        for (std::size_t mp = m + 1; mp < projections.size(); ++mp) {
            if (projections[m].rows() != projections[mp].rows()) {
                throw DimensionError("loading matrices disagree on the projection "
                                     "dimension d");
            }
            total += (projections[m] - projections[mp]).squaredNorm();
        }
    }
    return total / static_cast<double>(data.num_samples());
}

double compute_B(const std::vector<Matrix>& u) {
    std::vector<Matrix> self_products;
    self_products.reserve(u.size());
    for (const Matrix& um : u) {
        require_finite(um, "loading matrix");
        self_products.push_back(um.transpose() * um);
    }
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < self_products.size(); ++m) {
        for (std::size_t mp = m + 1; mp < self_products.size(); ++mp) {
            if (self_products[m].rows() != self_products[mp].rows()) {
                throw DimensionError("loading matrices disagree on the projection "
                                     "dimension d");
            }
            total += (self_products[m] + self_products[mp]).squaredNorm();
        }
    }
    return std::sqrt(total);
}

double compute_R(const MultiviewDataset& data) {
    if (data.views.empty() || data.num_samples() == 0) {
        throw InputError("cannot compute R on an empty dataset");
    }
    const auto kappa = diagonal_kernels(data);
    const Index n = data.num_samples();
    double best = 0.0;
    for (Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t m = 0; m + 1 < kappa.size(); ++m) {
            for (std::size_t mp = m + 1; mp < kappa.size(); ++mp) {
                const double pair = kappa[m][i] + kappa[mp][i];
                sum += pair * pair;
            }
        }
        best = std::max(best, sum);
    }
    return std::sqrt(best);
}

BoundReport generalization_bound(const std::vector<Matrix>& u, const MultiviewDataset& data,
                                 double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigurationError("delta must lie in (0, 1), got " + std::to_string(delta));
    }
    check_loadings(u, data);
    const Index n = data.num_samples();
    const auto kappa = diagonal_kernels(data);

    double trace_inner = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (std::size_t m = 0; m + 1 < kappa.size(); ++m) {
            for (std::size_t mp = m + 1; mp < kappa.size(); ++mp) {
                const double pair = kappa[m][i] + kappa[mp][i];
                trace_inner += pair * pair;
            }
        }
    }

    BoundReport report;
    report.delta = delta;
    report.g_bar = empirical_g(u, data);
    report.B = compute_B(u);
    report.R = compute_R(data);
    report.trace_term =
        4.0 * report.B / static_cast<double>(n) * std::sqrt(trace_inner);
    report.deviation_term = 3.0 * report.R * report.B *
                            std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
    report.bound = report.g_bar + report.trace_term + report.deviation_term;
    return report;
}

}  // namespace mvgcca
