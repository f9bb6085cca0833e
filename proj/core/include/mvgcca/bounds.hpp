#pragma once

#include <vector>

#include "mvgcca/dataset.hpp"
#include "mvgcca/linalg.hpp"

namespace mvgcca {

/// Additive decomposition of the high-probability generalization bound
/// on the expected pairwise projection disagreement:
///   bound = g_bar + deviation_term + trace_term, where
///   deviation_term = 3 R B sqrt(ln(2/delta) / (2N)) and
///   trace_term     = (4B/N) sqrt(sum_n sum_{m<m'} [k_m(n)+k_m'(n)]^2),
/// with k_m(n) = ||x_{m,n}||^2. R is the empirical maximum over the
/// supplied samples of sqrt(sum_{m<m'} [k_m + k_m']^2).
struct BoundReport {
    double g_bar = 0.0;
    double trace_term = 0.0;
    double deviation_term = 0.0;
    double B = 0.0;
    double R = 0.0;
    double delta = 0.0;
    double bound = 0.0;
};

/// (1/N) sum_n sum_{m<m'} ||U_m^T x_{m,n} - U_m'^T x_{m',n}||^2;
/// equals sumcor_objective / N.
double empirical_g(const std::vector<Matrix>& u, const MultiviewDataset& data);

/// sqrt(sum_{m<m'} ||U_m^T U_m + U_m'^T U_m'||_F^2).
double compute_B(const std::vector<Matrix>& u);

/// Empirical surrogate for the distributional maximum R, taken over the
/// provided samples.
double compute_R(const MultiviewDataset& data);

/// Accepts any loadings U; the guarantee is stated for the optimizers of
/// the graph-regularized fit, but the formula is well defined for all U.
BoundReport generalization_bound(const std::vector<Matrix>& u, const MultiviewDataset& data,
                                 double delta);

}  // namespace mvgcca
