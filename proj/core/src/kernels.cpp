#include "mvgcca/kernels.hpp"

#include <cmath>

namespace mvgcca {

namespace {

// Squared distances between all column pairs via the Gram trick; tiny
// negative values from cancellation are clamped to zero.
Matrix squared_distances(const Matrix& x) {
    const Vector norms = x.colwise().squaredNorm();
    Matrix sq = (-2.0 * (x.transpose() * x)).eval();
    sq.colwise() += norms;
    sq.rowwise() += norms.transpose();
    sq = sq.cwiseMax(0.0);
    sq.diagonal().setZero();
    return sq;
}

Matrix cross_squared_distances(const Matrix& a, const Matrix& b) {
    const Vector na = a.colwise().squaredNorm();
    const Vector nb = b.colwise().squaredNorm();
    Matrix sq = (-2.0 * (a.transpose() * b)).eval();
    sq.colwise() += na;
    sq.rowwise() += nb.transpose();
    return sq.cwiseMax(0.0);
}

}  // namespace

std::string to_string(KernelFamily family) {
    return family == KernelFamily::gaussian ? "gaussian" : "linear";
}

KernelFamily kernel_family_from_string(const std::string& name) {
    if (name == "gaussian") return KernelFamily::gaussian;
    if (name == "linear") return KernelFamily::linear;
    throw ConfigurationError("unknown kernel family '" + name + "'");
}

double mean_pairwise_distance(const Matrix& x) {
    require_finite(x, "data");
    const Index n = x.cols();
    if (n < 2) {
        throw InputError("mean pairwise distance needs at least two samples");
    }
    const Matrix sq = squared_distances(x);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            total += std::sqrt(sq(i, j));
        }
    }
    return total / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

KernelMatrix gaussian_kernel(const Matrix& x, double sigma) {
    require_finite(x, "data");
    if (!(sigma > 0.0)) {
        throw ConfigurationError("Gaussian bandwidth must be positive, got " +
                                 std::to_string(sigma));
    }
    KernelMatrix out;
    out.K = (-squared_distances(x) / (2.0 * sigma * sigma)).array().exp();
    out.K.diagonal().setOnes();
    out.K = 0.5 * (out.K + out.K.transpose()).eval();
    out.centered = false;
    out.provenance = {KernelFamily::gaussian, sigma};
    return out;
}

KernelMatrix gaussian_kernel_auto(const Matrix& x) {
    const double sigma = mean_pairwise_distance(x);
    if (!(sigma > 0.0)) {
        throw DegenerateDataError("all samples are identical; the mean pairwise "
                                  "distance is zero and no bandwidth can be derived");
    }
    return gaussian_kernel(x, sigma);
}

KernelMatrix linear_kernel(const Matrix& x) {
    require_finite(x, "data");
    KernelMatrix out;
    out.K = x.transpose() * x;
    out.K = 0.5 * (out.K + out.K.transpose()).eval();
    out.centered = false;
    out.provenance = {KernelFamily::linear, 0.0};
    return out;
}

KernelMatrix center_kernel(const KernelMatrix& kbar) {
    if (kbar.centered) {
        throw StateError("kernel is already centered");
    }
    const Matrix sym = symmetrized(kbar.K);
    const Vector row_mean = sym.rowwise().mean();
    const double grand_mean = row_mean.mean();
    KernelMatrix out;
    out.K = sym;
    out.K.colwise() -= row_mean;
    out.K.rowwise() -= row_mean.transpose();
    out.K.array() += grand_mean;
    out.K = 0.5 * (out.K + out.K.transpose()).eval();
    out.centered = true;
    out.provenance = kbar.provenance;
    return out;
}

Matrix cross_kernel(const KernelProvenance& prov, const Matrix& x_train, const Matrix& x_new) {
    require_finite(x_train, "training data");
    require_finite(x_new, "new data");
    if (x_train.rows() != x_new.rows()) {
        throw DimensionError("new samples have " + std::to_string(x_new.rows()) +
                             " features, training samples have " +
                             std::to_string(x_train.rows()));
    }
    if (prov.family == KernelFamily::linear) {
        return x_train.transpose() * x_new;
    }
    if (!(prov.sigma > 0.0)) {
        throw StateError("kernel provenance carries no valid Gaussian bandwidth");
    }
    return (-cross_squared_distances(x_train, x_new) / (2.0 * prov.sigma * prov.sigma))
        .array()
        .exp();
}

Matrix center_cross_kernel(const Matrix& k_train_uncentered, const Matrix& k_cross) {
    if (k_train_uncentered.rows() != k_train_uncentered.cols()) {
        throw DimensionError("training kernel must be square");
    }
    if (k_cross.rows() != k_train_uncentered.rows()) {
        throw DimensionError("cross kernel rows must match the training kernel size");
    }
    const Vector train_row_mean = k_train_uncentered.rowwise().mean();
    const double grand_mean = train_row_mean.mean();
    const Eigen::RowVectorXd new_col_mean = k_cross.colwise().mean();
    Matrix out = k_cross;
    out.colwise() -= train_row_mean;
    out.rowwise() -= new_col_mean;
    out.array() += grand_mean;
    return out;
}

}  // namespace mvgcca
