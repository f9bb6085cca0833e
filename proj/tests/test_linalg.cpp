#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "mvgcca/linalg.hpp"

using namespace mvgcca;
using testutil::random_matrix;
using testutil::random_spd;
using testutil::random_symmetric;

namespace {

void check_eigen_contract(const Matrix& a, const EigenResult& result) {
    const Index d = result.values.size();
    // descending order
    for (Index i = 0; i + 1 < d; ++i) {
        CHECK(result.values[i] >= result.values[i + 1]);
    }
    // orthonormal columns
    const Matrix gram = result.vectors.transpose() * result.vectors;
    CHECK((gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10);
    // residuals
    const double scale = std::max(1.0, a.norm());
    for (Index i = 0; i < d; ++i) {
        const double residual =
            (a * result.vectors.col(i) - result.values[i] * result.vectors.col(i)).norm();
        CHECK(residual <= 1e-8 * scale);
    }
    // sign convention
    for (Index j = 0; j < d; ++j) {
        Index pivot = 0;
        for (Index i = 0; i < result.vectors.rows(); ++i) {
            if (std::abs(result.vectors(i, j)) > std::abs(result.vectors(pivot, j))) {
                pivot = i;
            }
        }
        CHECK(result.vectors(pivot, j) > 0.0);
    }
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("identity matrix eigenpairs") {
    const Matrix a = Matrix::Identity(3, 3);
    const EigenResult result = sym_eig_topd(a, 2);
    CHECK(result.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    check_eigen_contract(a, result);
}

TEST_CASE("diagonal matrix picks largest entries in order") {
    Matrix a = Matrix::Zero(3, 3);
    a.diagonal() << 3.0, 1.0, 2.0;
    const EigenResult result = sym_eig_topd(a, 2);
    CHECK(result.values[0] == doctest::Approx(3.0));
    CHECK(result.values[1] == doctest::Approx(2.0));
    CHECK(result.vectors(0, 0) == doctest::Approx(1.0));
    CHECK(result.vectors(2, 1) == doctest::Approx(1.0));
    check_eigen_contract(a, result);
}

TEST_CASE("hand-computed 2x2 eigenpair") {
    Matrix a(2, 2);
    a << 2.0, 1.0, 1.0, 2.0;
    const EigenResult result = sym_eig_topd(a, 1);
    CHECK(result.values[0] == doctest::Approx(3.0).epsilon(1e-12));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(result.vectors(0, 0) - inv_sqrt2) <= 1e-10);
    CHECK(std::abs(result.vectors(1, 0) - inv_sqrt2) <= 1e-10);
}

TEST_CASE("full decomposition reconstructs the matrix") {
    std::mt19937_64 rng(7);
    const Matrix a = random_symmetric(10, rng);
    const EigenResult result = sym_eig_topd(a, 10);
    const Matrix rebuilt =
        result.vectors * result.values.asDiagonal() * result.vectors.transpose();
    CHECK((rebuilt - a).norm() <= 1e-7 * std::max(1.0, a.norm()));
}

TEST_CASE("eigen contract holds on random symmetric matrices") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix a = random_symmetric(16, rng);
        check_eigen_contract(a, sym_eig_topd(a, 7));
    }
}

TEST_CASE("eigen input validation") {
    const Matrix a = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(sym_eig_topd(a, 0), DimensionError);
    CHECK_THROWS_AS(sym_eig_topd(a, 4), DimensionError);
    Matrix asym(2, 2);
    asym << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(sym_eig_topd(asym, 1), InputError);
    Matrix bad = a;
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(sym_eig_topd(bad, 1), InputError);
}

TEST_CASE("ridge solve identity and diagonal cases") {
    CHECK((ridge_solve(Matrix::Identity(2, 2), 0.0, Matrix::Identity(2, 2)) -
           Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() <= 1e-14);

    Matrix g = Matrix::Zero(2, 2);
    g.diagonal() << 1.0, 3.0;
    Matrix b(2, 1);
    b << 1.0, 1.0;
    const Matrix x = ridge_solve(g, 1.0, b);
    CHECK(x(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(x(1, 0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("ridge solve is exact on diagonal matrices") {
    Matrix g = Matrix::Zero(3, 3);
    g.diagonal() << 2.0, 5.0, 10.0;
    Matrix b(3, 2);
    b << 1.0, -2.0, 4.0, 0.5, -3.0, 9.0;
    const Matrix x = ridge_solve(g, 0.0, b);
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 2; ++j) {
            CHECK(std::abs(x(i, j) - b(i, j) / g(i, i)) <= 1e-12);
        }
    }
}

TEST_CASE("ridge solve residual on random SPD systems") {
    std::mt19937_64 rng(3);
    const Matrix g = random_spd(5, rng);
    const Matrix b = random_matrix(5, 3, rng);
    const Matrix x = ridge_solve(g, 0.1, b);
    const Matrix shifted = g + 0.1 * Matrix::Identity(5, 5);
    CHECK((shifted * x - b).norm() <= 1e-8 * std::max(1.0, b.norm()));
}

TEST_CASE("ridge solve rejects singular shifted systems") {
    Matrix g = Matrix::Zero(2, 2);
    g.diagonal() << 1.0, -1.0;
    CHECK_THROWS_AS(ridge_solve(g, 1.0, Matrix::Identity(2, 2)), SingularMatrixError);
    CHECK_THROWS_AS(ridge_solve(Matrix::Zero(2, 2), 0.0, Matrix::Identity(2, 2)),
                    SingularMatrixError);
    CHECK_THROWS_AS(ridge_solve(Matrix::Identity(2, 2), -0.5, Matrix::Identity(2, 2)),
                    InputError);
}

TEST_CASE("trace quadratic on the two-node Laplacian") {
    Matrix l(2, 2);
    l << 1.0, -1.0, -1.0, 1.0;
    CHECK(trace_quadratic(Matrix::Identity(2, 2), l) == doctest::Approx(2.0));
}

TEST_CASE("trace quadratic vanishes on the zero matrix") {
    std::mt19937_64 rng(11);
    const Matrix s = random_matrix(3, 5, rng);
    CHECK(trace_quadratic(s, Matrix::Zero(5, 5)) == doctest::Approx(0.0));
}

TEST_CASE("trace quadratic equals the pairwise smoothness sum") {
    std::mt19937_64 rng(13);
    const Matrix s = random_matrix(3, 5, rng);
    // path graph 0-1-2-3-4
    Matrix w = Matrix::Zero(5, 5);
    for (Index i = 0; i + 1 < 5; ++i) {
        w(i, i + 1) = 1.0;
        w(i + 1, i) = 1.0;
    }
    Matrix l = -w;
    l.diagonal() += w.rowwise().sum();
    const double via_trace = trace_quadratic(s, l);
    const double via_sum = testutil::smoothness_double_sum(s, w);
    CHECK(std::abs(via_trace - via_sum) <= 1e-9 * std::max(1.0, std::abs(via_sum)));
}

TEST_CASE("trace quadratic dimension mismatch") {
    CHECK_THROWS_AS(trace_quadratic(Matrix::Identity(2, 2), Matrix::Zero(3, 3)),
                    DimensionError);
}

TEST_CASE("projector distance ignores the basis") {
    std::mt19937_64 rng(5);
    const Matrix v1 = testutil::random_orthonormal_rows(2, 6, rng).transpose();
    const double theta = 0.73;
    Matrix rotation(2, 2);
    rotation << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    CHECK(projector_distance(v1, v1 * rotation) <= 1e-12);
}

}  // TEST_SUITE
