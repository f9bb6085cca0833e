#include "mvgcca/mcca.hpp"

#include <string>
#include <utility>

namespace mvgcca {

namespace {

constexpr double kRankTol = 1e-10;

// Spectral decomposition of one view's sample covariance X X^T with the
// primal-feasibility rank check.
struct ViewGram {
    Matrix vectors;  // eigenvectors of X X^T
    Vector values;   // eigenvalues, all above the rank threshold
};

ViewGram view_gram(const Matrix& x, std::size_t view_index) {
    Matrix g = x * x.transpose();
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(g);
    if (solver.info() != Eigen::Success) {
        throw SingularMatrixError("view " + std::to_string(view_index) +
                                  ": eigendecomposition of X X^T did not converge");
    }
    const double threshold = kRankTol * g.norm();
    if (!(solver.eigenvalues().minCoeff() > threshold)) {
        throw SingularMatrixError(
            "view " + std::to_string(view_index) + ": X X^T is numerically singular (D=" +
            std::to_string(x.rows()) + ", N=" + std::to_string(x.cols()) +
            "); the primal formulation needs full row rank with D <= N - "
            "use the dual formulation (fit_gdmcca) instead");
    }
    return ViewGram{solver.eigenvectors(), solver.eigenvalues()};
}

// (X X^T)^{-1} B through the cached decomposition.
Matrix gram_solve(const ViewGram& gram, const Matrix& b) {
    return gram.vectors *
           (gram.values.cwiseInverse().asDiagonal() * (gram.vectors.transpose() * b));
}

Matrix accumulate_C(const MultiviewDataset& data, const GraphLaplacian& lap, double gamma,
                    std::vector<ViewGram>* keep) {
    if (gamma < 0.0) {
        throw ConfigurationError("gamma must be nonnegative, got " + std::to_string(gamma));
    }
    const Index n = data.num_samples();
    if (lap.size() != n) {
        throw DimensionError("Laplacian is " + std::to_string(lap.size()) +
                             "x" + std::to_string(lap.size()) + " but the data has " +
                             std::to_string(n) + " samples");
    }
    Matrix c = Matrix::Zero(n, n);
    for (std::size_t m = 0; m < data.views.size(); ++m) {
        const Matrix& x = data.views[m];
        ViewGram gram = view_gram(x, m);
        // X^T (X X^T)^{-1} X  via  B^T diag(1/lambda) B  with B = V^T X
        const Matrix b = gram.vectors.transpose() * x;
        c.noalias() += b.transpose() * (gram.values.cwiseInverse().asDiagonal() * b);
        if (keep) keep->push_back(std::move(gram));
    }
    c -= gamma * lap.L;
    return 0.5 * (c + c.transpose()).eval();
}

}  // namespace

Matrix build_C(const MultiviewDataset& data, const GraphLaplacian& lap, double gamma) {
    return accumulate_C(data, lap, gamma, nullptr);
}

PrimalModel fit_gmcca(const MultiviewDataset& data_in, const GraphLaplacian& lap,
                      double gamma, Index d) {
    const MultiviewDataset data = data_in.centered ? data_in : center_views(data_in);
    std::vector<ViewGram> grams;
    grams.reserve(data.views.size());
    const Matrix c = accumulate_C(data, lap, gamma, &grams);
    const EigenResult eig = sym_eig_topd(c, d);

    PrimalModel model;
    model.S_hat = eig.vectors.transpose();
    model.eigenvalues = eig.values;
    model.gamma = gamma;
    model.d = d;
    model.U.reserve(data.views.size());
    for (std::size_t m = 0; m < data.views.size(); ++m) {
        model.U.push_back(gram_solve(grams[m], data.views[m] * eig.vectors));
    }
    return model;
}

double primal_objective(const PrimalModel& model, const MultiviewDataset& data,
                        const GraphLaplacian& lap) {
    if (static_cast<Index>(model.U.size()) != data.num_views()) {
        throw DimensionError("model has " + std::to_string(model.U.size()) +
                             " loading matrices for " + std::to_string(data.num_views()) +
                             " views");
    }
    double objective = 0.0;
    for (std::size_t m = 0; m < model.U.size(); ++m) {
        if (model.U[m].rows() != data.views[m].rows()) {
            throw DimensionError("view " + std::to_string(m) + " feature count does not "
                                 "match its loading matrix");
        }
        objective += (model.U[m].transpose() * data.views[m] - model.S_hat).squaredNorm();
    }
    return objective + model.gamma * trace_quadratic(model.S_hat, lap.L);
}

double sumcor_objective(const std::vector<Matrix>& u, const MultiviewDataset& data) {
    if (u.size() != data.views.size()) {
        throw DimensionError("got " + std::to_string(u.size()) + " loading matrices for " +
                             std::to_string(data.views.size()) + " views");
    }
    std::vector<Matrix> projections;
    projections.reserve(u.size());
    for (std::size_t m = 0; m < u.size(); ++m) {
        if (u[m].rows() != data.views[m].rows()) {
            throw DimensionError("view " + std::to_string(m) + " feature count does not "
                                 "match its loading matrix");
        }
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
    return total;
}

Matrix transform_primal(const PrimalModel& model, const std::vector<Matrix>& new_views) {
    if (new_views.size() != model.U.size()) {
        throw DimensionError("got " + std::to_string(new_views.size()) + " views for a " +
                             std::to_string(model.U.size()) + "-view model");
    }
    if (new_views.empty()) throw InputError("no views to transform");
    const Index t = new_views.front().cols();
    Matrix out = Matrix::Zero(model.d, t);
    for (std::size_t m = 0; m < new_views.size(); ++m) {
        require_finite(new_views[m], "new view");
        if (new_views[m].rows() != model.U[m].rows()) {
            throw DimensionError("new view " + std::to_string(m) + " has " +
                                 std::to_string(new_views[m].rows()) +
                                 " features, the model expects " +
                                 std::to_string(model.U[m].rows()));
        }
        if (new_views[m].cols() != t) {
            throw DimensionError("new views disagree on the number of samples");
        }
        out.noalias() += model.U[m].transpose() * new_views[m];
    }
    return out;
}

}  // namespace mvgcca
