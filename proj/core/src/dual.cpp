#include "mvgcca/dual.hpp"

#include <utility>

namespace mvgcca {

namespace {

constexpr double kRidgeSingularTol = 1e-12;

struct GramEig {
    Matrix vectors;
    Vector values;
};

GramEig decompose(const Matrix& g, std::size_t view_index, const char* what) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (g + g.transpose()));
    if (solver.info() != Eigen::Success) {
        throw SingularMatrixError("view " + std::to_string(view_index) +
                                  ": eigendecomposition of " + what + " did not converge");
    }
    return GramEig{solver.eigenvectors(), solver.eigenvalues()};
}

void check_shift(const GramEig& eig, double eps, double g_norm, std::size_t view_index) {
    const double smallest = eig.values.minCoeff() + eps;
    if (!(smallest > kRidgeSingularTol * g_norm)) {
        throw SingularMatrixError("view " + std::to_string(view_index) +
                                  ": ridge-shifted Gram matrix is numerically singular "
                                  "(smallest shifted eigenvalue " +
                                  std::to_string(smallest) + ")");
    }
}

// V f(lambda) V^T for f applied entrywise to the spectrum.
template <typename Fn>
Matrix spectral_apply(const GramEig& eig, Fn f) {
    Vector mapped(eig.values.size());
    for (Index i = 0; i < mapped.size(); ++i) mapped[i] = f(eig.values[i]);
    return eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
}

void check_laplacian_size(const GraphLaplacian& lap, Index n) {
    if (lap.size() != n) {
        throw DimensionError("Laplacian is " + std::to_string(lap.size()) + "x" +
                             std::to_string(lap.size()) + " but the data has " +
                             std::to_string(n) + " samples");
    }
}

}  // namespace

std::string to_string(CdForm form) {
    return form == CdForm::printed ? "printed" : "derived";
}

CdForm cd_form_from_string(const std::string& name) {
    if (name == "printed") return CdForm::printed;
    if (name == "derived") return CdForm::derived;
    throw ConfigurationError("unknown C_d form '" + name + "'");
}

std::vector<double> resolve_epsilon(const std::vector<double>& epsilon, Index num_views) {
    std::vector<double> out;
    if (epsilon.size() == 1) {
        out.assign(static_cast<std::size_t>(num_views), epsilon.front());
    } else if (epsilon.size() == static_cast<std::size_t>(num_views)) {
        out = epsilon;
    } else {
        throw ConfigurationError("epsilon must be a scalar or one value per view; got " +
                                 std::to_string(epsilon.size()) + " values for " +
                                 std::to_string(num_views) + " views");
    }
    for (double e : out) {
        if (!(e > 0.0)) {
            throw ConfigurationError(
                "epsilon must be strictly positive: without the ridge term the shared "
                "representation no longer depends on the data");
        }
    }
    return out;
}

DualModel fit_gdmcca(const MultiviewDataset& data_in, const GraphLaplacian& lap,
                     double gamma, const std::vector<double>& epsilon, Index d,
                     CdForm form) {
    if (gamma < 0.0) {
        throw ConfigurationError("gamma must be nonnegative, got " + std::to_string(gamma));
    }
    auto data = std::make_shared<MultiviewDataset>(
        data_in.centered ? data_in : center_views(data_in));
    const Index n = data->num_samples();
    check_laplacian_size(lap, n);
    const std::vector<double> eps = resolve_epsilon(epsilon, data->num_views());

    std::vector<GramEig> grams;
    grams.reserve(data->views.size());
    Matrix cd = Matrix::Zero(n, n);
    for (std::size_t m = 0; m < data->views.size(); ++m) {
        Matrix g = data->views[m].transpose() * data->views[m];
        GramEig eig = decompose(g, m, "X^T X");
        check_shift(eig, eps[m], g.norm(), m);
        if (form == CdForm::derived) {
            cd += spectral_apply(eig, [&](double v) { return v / (v + eps[m]); });
        } else {
            cd += spectral_apply(eig, [&](double v) { return 1.0 / (v + eps[m]); });
        }
        grams.push_back(std::move(eig));
    }
    cd -= gamma * lap.L;
    cd = 0.5 * (cd + cd.transpose()).eval();

    const EigenResult top = sym_eig_topd(cd, d);
    DualModel model;
    model.S_hat = top.vectors.transpose();
    model.eigenvalues = top.values;
    model.gamma = gamma;
    model.epsilon = eps;
    model.d = d;
    model.cd_form = form;
    model.A.reserve(grams.size());
    for (std::size_t m = 0; m < grams.size(); ++m) {
        Vector inv_shift = (grams[m].values.array() + eps[m]).inverse();
        model.A.push_back(grams[m].vectors * inv_shift.asDiagonal() *
                          (grams[m].vectors.transpose() * top.vectors));
    }
    model.train_data = std::move(data);
    return model;
}

DualModel fit_gkmcca(const std::vector<KernelMatrix>& kernels, const GraphLaplacian& lap,
                     double gamma, const std::vector<double>& epsilon, Index d) {
    if (kernels.empty()) throw InputError("no kernel matrices given");
    if (gamma < 0.0) {
        throw ConfigurationError("gamma must be nonnegative, got " + std::to_string(gamma));
    }
    const Index n = kernels.front().K.rows();
    check_laplacian_size(lap, n);
    const std::vector<double> eps =
        resolve_epsilon(epsilon, static_cast<Index>(kernels.size()));

    std::vector<GramEig> spectra;
    spectra.reserve(kernels.size());
    Matrix cg = Matrix::Zero(n, n);
    for (std::size_t m = 0; m < kernels.size(); ++m) {
        const KernelMatrix& km = kernels[m];
        if (!km.centered) {
            throw StateError("kernel " + std::to_string(m) +
                             " is not centered; call center_kernel before fitting");
        }
        if (km.K.rows() != n || km.K.cols() != n) {
            throw DimensionError("kernel " + std::to_string(m) + " is " +
                                 std::to_string(km.K.rows()) + "x" +
                                 std::to_string(km.K.cols()) + ", expected " +
                                 std::to_string(n) + "x" + std::to_string(n));
        }
        GramEig eig = decompose(km.K, m, "the kernel matrix");
        check_shift(eig, eps[m], km.K.norm(), m);
        cg += spectral_apply(eig, [&](double v) { return v / (v + eps[m]); });
        spectra.push_back(std::move(eig));
    }
    cg -= gamma * lap.L;
    cg = 0.5 * (cg + cg.transpose()).eval();

    const EigenResult top = sym_eig_topd(cg, d);
    DualModel model;
    model.S_hat = top.vectors.transpose();
    model.eigenvalues = top.values;
    model.gamma = gamma;
    model.epsilon = eps;
    model.d = d;
    model.A.reserve(spectra.size());
    for (std::size_t m = 0; m < spectra.size(); ++m) {
        Vector inv_shift = (spectra[m].values.array() + eps[m]).inverse();
        model.A.push_back(spectra[m].vectors * inv_shift.asDiagonal() *
                          (spectra[m].vectors.transpose() * top.vectors));
    }
    std::vector<KernelProvenance> provenance;
    provenance.reserve(kernels.size());
    for (const KernelMatrix& km : kernels) provenance.push_back(km.provenance);
    model.kernel = std::move(provenance);
    return model;
}

Matrix transform_dual(const DualModel& model, const std::vector<Matrix>& new_views) {
    if (!model.train_data) {
        throw StateError("training views are not bound to this model; rebind them "
                         "(or use transform_kernel for kernel models)");
    }
    const MultiviewDataset& train = *model.train_data;
    if (new_views.size() != model.A.size() ||
        train.views.size() != model.A.size()) {
        throw DimensionError("view count mismatch between model, training data, and "
                             "new data");
    }
    const Index t = new_views.empty() ? 0 : new_views.front().cols();
    Matrix out = Matrix::Zero(model.d, t);
    for (std::size_t m = 0; m < new_views.size(); ++m) {
        require_finite(new_views[m], "new view");
        if (new_views[m].rows() != train.views[m].rows()) {
            throw DimensionError("new view " + std::to_string(m) + " has " +
                                 std::to_string(new_views[m].rows()) +
                                 " features, training had " +
                                 std::to_string(train.views[m].rows()));
        }
        if (new_views[m].cols() != t) {
            throw DimensionError("new views disagree on the number of samples");
        }
        // U_m = X_m A_m, applied as A_m^T (X_m^T X_new)
        out.noalias() +=
            model.A[m].transpose() * (train.views[m].transpose() * new_views[m]);
    }
    return out;
}

Matrix transform_kernel(const DualModel& model, const MultiviewDataset& train_data,
                        const std::vector<Matrix>& new_views) {
    if (!model.kernel) {
        throw StateError("model has no kernel provenance; use transform_dual");
    }
    const auto& provenance = *model.kernel;
    if (new_views.size() != model.A.size() ||
        train_data.views.size() != model.A.size()) {
        throw DimensionError("view count mismatch between model, training data, and "
                             "new data");
    }
    const Index n = model.S_hat.cols();
    if (train_data.num_samples() != n) {
        throw DimensionError("training data has " + std::to_string(train_data.num_samples()) +
                             " samples, the model was fit on " + std::to_string(n));
    }
    const Index t = new_views.empty() ? 0 : new_views.front().cols();
    Matrix out = Matrix::Zero(model.d, t);
    for (std::size_t m = 0; m < new_views.size(); ++m) {
        if (new_views[m].cols() != t) {
            throw DimensionError("new views disagree on the number of samples");
        }
        const Matrix k_train =
            cross_kernel(provenance[m], train_data.views[m], train_data.views[m]);
        const Matrix k_cross =
            cross_kernel(provenance[m], train_data.views[m], new_views[m]);
        out.noalias() +=
            model.A[m].transpose() * center_cross_kernel(k_train, k_cross);
    }
    return out;
}

}  // namespace mvgcca
