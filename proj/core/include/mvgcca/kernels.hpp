#pragma once

#include <string>

#include "mvgcca/linalg.hpp"

namespace mvgcca {

enum class KernelFamily { linear, gaussian };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

// Construction recipe of a kernel; enough to evaluate cross-kernels
// against new samples later. sigma is the Gaussian bandwidth (ignored
// for linear kernels).
struct KernelProvenance {
    KernelFamily family = KernelFamily::linear;
    double sigma = 0.0;
};

/// N x N similarity matrix with its centering state and provenance.
struct KernelMatrix {
    Matrix K;
    bool centered = false;
    KernelProvenance provenance;
};

/// Mean Euclidean distance over the N(N-1)/2 distinct column pairs of X.
double mean_pairwise_distance(const Matrix& x);

/// K(i,j) = exp(-||x_i - x_j||^2 / (2 sigma^2)); unit diagonal.
KernelMatrix gaussian_kernel(const Matrix& x, double sigma);

/// Gaussian kernel with sigma set to the mean pairwise column distance.
/// Throws DegenerateDataError when all columns coincide.
KernelMatrix gaussian_kernel_auto(const Matrix& x);

/// K = X^T X.
KernelMatrix linear_kernel(const Matrix& x);

/// K = H Kbar H with H = I - (1/N) 11^T. Rejects input whose centered
/// flag is already set.
KernelMatrix center_kernel(const KernelMatrix& kbar);

/// Kernel evaluations between training columns (rows of the result) and
/// new columns, using the recorded construction recipe.
Matrix cross_kernel(const KernelProvenance& prov, const Matrix& x_train, const Matrix& x_new);

/// Centers a train x new cross-kernel consistently with training-side
/// centering: subtracts the train kernel's row means and the cross
/// kernel's column means, and adds back the train grand mean.
Matrix center_cross_kernel(const Matrix& k_train_uncentered, const Matrix& k_cross);

}  // namespace mvgcca
