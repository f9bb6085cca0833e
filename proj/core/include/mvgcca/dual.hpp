#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvgcca/dataset.hpp"
#include "mvgcca/graph.hpp"
#include "mvgcca/kernels.hpp"
#include "mvgcca/linalg.hpp"

namespace mvgcca {

/// Which C_d to decompose in the dual fit.
///
/// `derived` is sum_m (X_m^T X_m)(X_m^T X_m + eps_m I)^{-1} - gamma L,
/// obtained by substituting the optimal duals back into the regularized
/// dual cost; it coincides with the kernel-side matrix under a linear
/// kernel. `printed` drops the leading Gram factor,
/// sum_m (X_m^T X_m + eps_m I)^{-1} - gamma L, and is kept only as a
/// compatibility switch.
enum class CdForm { printed, derived };

std::string to_string(CdForm form);
CdForm cd_form_from_string(const std::string& name);

/// Fitted dual/kernel model: shared sources S_hat (d x N, orthonormal
/// rows) and per-view duals A_m (N x d). Dual models retain the
/// (centered) training views because out-of-sample transforms need them;
/// kernel models instead carry per-view kernel provenance.
struct DualModel {
    Matrix S_hat;
    std::vector<Matrix> A;
    Vector eigenvalues;
    double gamma = 0.0;
    std::vector<double> epsilon;  // one entry per view
    Index d = 0;
    CdForm cd_form = CdForm::derived;
    std::optional<std::vector<KernelProvenance>> kernel;  // present for GKMCCA
    std::shared_ptr<const MultiviewDataset> train_data;   // present for GDMCCA
};

/// Broadcasts a scalar epsilon or validates an M-vector; every entry
/// must be strictly positive (at epsilon = 0 the dual solution no longer
/// depends on the data).
std::vector<double> resolve_epsilon(const std::vector<double>& epsilon, Index num_views);

/// Graph-regularized dual MCCA. Centers the data first if needed.
DualModel fit_gdmcca(const MultiviewDataset& data, const GraphLaplacian& lap, double gamma,
                     const std::vector<double>& epsilon, Index d,
                     CdForm form = CdForm::derived);

/// Graph-regularized kernel MCCA on centered kernel matrices.
DualModel fit_gkmcca(const std::vector<KernelMatrix>& kernels, const GraphLaplacian& lap,
                     double gamma, const std::vector<double>& epsilon, Index d);

/// sum_m U_m^T X_m_new with the implied loadings U_m = X_m_train A_m.
Matrix transform_dual(const DualModel& model, const std::vector<Matrix>& new_views);

/// Kernel out-of-sample embedding: evaluates each view's train-vs-new
/// cross-kernel from the recorded provenance, centers it consistently
/// with training centering, and returns sum_m A_m^T K_m_new.
Matrix transform_kernel(const DualModel& model, const MultiviewDataset& train_data,
                        const std::vector<Matrix>& new_views);

}  // namespace mvgcca
