#include "mvgcca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mvgcca {

namespace {

constexpr double kSymmetryTol = 1e-8;
constexpr double kRidgeSingularTol = 1e-12;

std::string shape_of(const Matrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

bool all_finite(const Matrix& a) noexcept { return a.allFinite(); }

void require_finite(const Matrix& a, const char* what) {
    if (!a.allFinite()) {
        throw InputError(std::string(what) + " contains non-finite entries");
    }
}

Matrix symmetrized(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("expected a square matrix, got " + shape_of(a));
    }
    require_finite(a, "matrix");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double asymmetry = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > kSymmetryTol * scale) {
        throw InputError("matrix is not symmetric (max asymmetry " +
                         std::to_string(asymmetry) + ")");
    }
    return 0.5 * (a + a.transpose());
}

void apply_sign_convention(Matrix& vectors) {
    for (Index j = 0; j < vectors.cols(); ++j) {
        Index pivot = 0;
        double best = -1.0;
        for (Index i = 0; i < vectors.rows(); ++i) {
            const double magnitude = std::abs(vectors(i, j));
            if (magnitude > best) {
                best = magnitude;
                pivot = i;
            }
        }
        if (vectors(pivot, j) < 0.0) {
            vectors.col(j) = -vectors.col(j);
        }
    }
}

EigenResult sym_eig_topd(const Matrix& a, Index d) {
    const Matrix sym = symmetrized(a);
    const Index n = sym.rows();
    if (d < 1 || d > n) {
        throw DimensionError("requested " + std::to_string(d) +
                             " eigenpairs from a " + shape_of(sym) + " matrix");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw SingularMatrixError("symmetric eigendecomposition did not converge");
    }
    // Eigen reports ascending order; flip to descending.
    EigenResult out;
    out.values = solver.eigenvalues().reverse().head(d);
    out.vectors = solver.eigenvectors().rowwise().reverse().leftCols(d);
    apply_sign_convention(out.vectors);
    return out;
}

Matrix ridge_solve(const Matrix& g, double eps, const Matrix& b) {
    if (eps < 0.0) {
        throw InputError("ridge shift must be nonnegative, got " + std::to_string(eps));
    }
    const Matrix sym = symmetrized(g);
    if (b.rows() != sym.rows()) {
        throw DimensionError("right-hand side has " + std::to_string(b.rows()) +
                             " rows, expected " + std::to_string(sym.rows()));
    }
    require_finite(b, "right-hand side");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw SingularMatrixError("symmetric eigendecomposition did not converge");
    }
    const Vector shifted = solver.eigenvalues().array() + eps;
    const double tol = kRidgeSingularTol * sym.norm();
    if (!(shifted.minCoeff() > tol)) {
        throw SingularMatrixError("ridge-shifted matrix is numerically singular "
                                  "(smallest shifted eigenvalue " +
                                  std::to_string(shifted.minCoeff()) + ")");
    }
    return solver.eigenvectors() *
           (shifted.cwiseInverse().asDiagonal() * (solver.eigenvectors().transpose() * b));
}

double trace_quadratic(const Matrix& s, const Matrix& l) {
    if (l.rows() != l.cols()) {
        throw DimensionError("expected a square matrix, got " + shape_of(l));
    }
    if (s.cols() != l.rows()) {
        throw DimensionError("S has " + std::to_string(s.cols()) +
                             " columns but L is " + shape_of(l));
    }
    require_finite(s, "S");
    require_finite(l, "L");
    return (s * l).cwiseProduct(s).sum();
}

double projector_distance(const Matrix& v1, const Matrix& v2) {
    if (v1.rows() != v2.rows()) {
        throw DimensionError("subspace bases live in different ambient dimensions");
    }
    return (v1 * v1.transpose() - v2 * v2.transpose()).norm();
}

}  // namespace mvgcca
