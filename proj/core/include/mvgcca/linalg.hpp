#pragma once

#include <Eigen/Dense>

#include "mvgcca/errors.hpp"

namespace mvgcca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Top-d eigenpairs of a dense symmetric matrix.
///
/// `values` is sorted descending and `vectors` holds the matching
/// orthonormal eigenvectors as columns. Each eigenvector is sign-fixed so
/// that its entry of largest absolute value is positive (ties broken by
/// lowest index), which keeps repeated runs comparable. For degenerate
/// eigenvalues only the spanned subspace is well defined; compare
/// subspaces with projector_distance, not raw columns.
struct EigenResult {
    Vector values;   // length d, descending
    Matrix vectors;  // n x d, orthonormal columns
};

bool all_finite(const Matrix& a) noexcept;
void require_finite(const Matrix& a, const char* what);

/// (A + A^T)/2. Rejects matrices that deviate from symmetry by more than
/// 1e-8 relative to their magnitude.
Matrix symmetrized(const Matrix& a);

/// Sign-fixes eigenvector columns in place (largest-|entry| coordinate
/// made positive, ties broken by lowest index).
void apply_sign_convention(Matrix& vectors);

EigenResult sym_eig_topd(const Matrix& a, Index d);

/// X = (G + eps I)^{-1} B for symmetric G, via spectral decomposition.
/// Throws SingularMatrixError when the shifted matrix is numerically
/// singular (smallest shifted eigenvalue <= 1e-12 * ||G||_F).
Matrix ridge_solve(const Matrix& g, double eps, const Matrix& b);

/// Tr(S L S^T) for S (d x n) and L (n x n).
double trace_quadratic(const Matrix& s, const Matrix& l);

/// ||V1 V1^T - V2 V2^T||_F, a basis-free distance between the column
/// spans of two orthonormal matrices.
double projector_distance(const Matrix& v1, const Matrix& v2);

}  // namespace mvgcca
