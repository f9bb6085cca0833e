#pragma once

#include <vector>

#include "mvgcca/dataset.hpp"
#include "mvgcca/graph.hpp"
#include "mvgcca/linalg.hpp"

namespace mvgcca {

/// Fitted primal model: shared sources S_hat (d x N, orthonormal rows),
/// per-view loadings U_m (D_m x d), and the top-d eigenvalues of the
/// matrix the fit decomposed.
struct PrimalModel {
    Matrix S_hat;
    std::vector<Matrix> U;
    Vector eigenvalues;
    double gamma = 0.0;
    Index d = 0;
};

/// C = sum_m X_m^T (X_m X_m^T)^{-1} X_m - gamma * L, symmetrized.
///
/// Every X_m X_m^T must be numerically nonsingular (smallest eigenvalue
/// above 1e-10 * ||X_m X_m^T||_F); rank-deficient views (including any
/// with D_m > N) raise SingularMatrixError pointing at fit_gdmcca, which
/// has no such restriction.
Matrix build_C(const MultiviewDataset& data, const GraphLaplacian& lap, double gamma);

/// Graph-regularized MAXVAR MCCA. Centers the data first if needed.
/// With gamma = 0 this is plain MAXVAR MCCA.
PrimalModel fit_gmcca(const MultiviewDataset& data, const GraphLaplacian& lap,
                      double gamma, Index d);

/// sum_m ||U_m^T X_m - S_hat||_F^2 + gamma * Tr(S_hat L S_hat^T),
/// evaluated at the model's parameters on the given (centered) data.
double primal_objective(const PrimalModel& model, const MultiviewDataset& data,
                        const GraphLaplacian& lap);

/// Pairwise disagreement sum_{m<m'} ||U_m^T X_m - U_m'^T X_m'||_F^2.
/// Evaluator only; minimizing it is a different (NP-hard) problem.
double sumcor_objective(const std::vector<Matrix>& u, const MultiviewDataset& data);

/// Out-of-sample embedding sum_m U_m^T X_m_new.
Matrix transform_primal(const PrimalModel& model, const std::vector<Matrix>& new_views);

}  // namespace mvgcca
