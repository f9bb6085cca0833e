#include "mvgcca/dataset.hpp"

#include <string>

namespace mvgcca {

MultiviewDataset MultiviewDataset::from_views(std::vector<Matrix> views, bool centered) {
    if (views.empty()) {
        throw InputError("a multiview dataset needs at least one view");
    }
    const Index n = views.front().cols();
    if (n < 2) {
        throw InputError("a multiview dataset needs at least two samples");
    }
    for (std::size_t m = 0; m < views.size(); ++m) {
        require_finite(views[m], "view");
        if (views[m].rows() < 1) {
            throw InputError("view " + std::to_string(m) + " has no features");
        }
        if (views[m].cols() != n) {
            throw DimensionError("view " + std::to_string(m) + " has " +
                                 std::to_string(views[m].cols()) +
                                 " samples, expected " + std::to_string(n));
        }
        if (centered) {
            const double worst = views[m].rowwise().mean().cwiseAbs().maxCoeff();
            if (worst > 1e-9) {
                throw StateError("view " + std::to_string(m) +
                                 " is marked centered but a feature mean is " +
                                 std::to_string(worst));
            }
        }
    }
    MultiviewDataset out;
    out.views = std::move(views);
    out.centered = centered;
    return out;
}

MultiviewDataset center_views(const MultiviewDataset& data) {
    MultiviewDataset out;
    out.views.reserve(data.views.size());
    for (const Matrix& x : data.views) {
        Matrix c = x;
        c.colwise() -= x.rowwise().mean();
        out.views.push_back(std::move(c));
    }
    out.centered = true;
    return out;
}

std::vector<Vector> feature_means(const MultiviewDataset& data) {
    std::vector<Vector> means;
    means.reserve(data.views.size());
    for (const Matrix& x : data.views) {
        means.push_back(x.rowwise().mean());
    }
    return means;
}

std::vector<Matrix> subtract_means(const std::vector<Matrix>& views,
                                   const std::vector<Vector>& means) {
    if (views.size() != means.size()) {
        throw DimensionError("got " + std::to_string(means.size()) + " mean vectors for " +
                             std::to_string(views.size()) + " views");
    }
    std::vector<Matrix> out;
    out.reserve(views.size());
    for (std::size_t m = 0; m < views.size(); ++m) {
        if (views[m].rows() != means[m].size()) {
            throw DimensionError("view " + std::to_string(m) + " has " +
                                 std::to_string(views[m].rows()) +
                                 " features but the mean vector has " +
                                 std::to_string(means[m].size()));
        }
        Matrix c = views[m];
        c.colwise() -= means[m];
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Matrix> select_columns(const std::vector<Matrix>& views,
                                   const std::vector<Index>& columns) {
    std::vector<Matrix> out;
    out.reserve(views.size());
    for (const Matrix& x : views) {
        Matrix sub(x.rows(), static_cast<Index>(columns.size()));
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c] < 0 || columns[c] >= x.cols()) {
                throw DimensionError("column index " + std::to_string(columns[c]) +
                                     " out of range");
            }
            sub.col(static_cast<Index>(c)) = x.col(columns[c]);
        }
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace mvgcca
