#pragma once

#include <vector>

#include "mvgcca/linalg.hpp"

namespace mvgcca {

/// M feature matrices (D_m x N) describing the same N entities; columns
/// are samples, aligned across views.
struct MultiviewDataset {
    std::vector<Matrix> views;
    bool centered = false;

    /// Validates: at least one view, all finite, a common sample count
    /// N >= 2. With `centered` set, every view's feature rows must have
    /// zero mean within 1e-9.
    static MultiviewDataset from_views(std::vector<Matrix> views, bool centered = false);

    Index num_views() const { return static_cast<Index>(views.size()); }
    Index num_samples() const { return views.empty() ? 0 : views.front().cols(); }
};

/// Removes each feature row's mean across samples and marks the result
/// centered. Constant rows become all-zero rows.
MultiviewDataset center_views(const MultiviewDataset& data);

/// Per-view feature means (the quantities center_views subtracts).
std::vector<Vector> feature_means(const MultiviewDataset& data);

/// views[m] minus means[m] per row; the consistent way to apply a
/// training-set centering to held-out views.
std::vector<Matrix> subtract_means(const std::vector<Matrix>& views,
                                   const std::vector<Vector>& means);

/// Column subset of every view, in the given order.
std::vector<Matrix> select_columns(const std::vector<Matrix>& views,
                                   const std::vector<Index>& columns);

}  // namespace mvgcca
