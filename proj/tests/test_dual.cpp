#include <doctest.h>

#include <cmath>
#include <random>

#include "dual_oracle.hpp"
#include "helpers.hpp"
#include "mvgcca/dual.hpp"
#include "mvgcca/mcca.hpp"

using namespace mvgcca;
using testutil::random_graph;
using testutil::random_matrix;

namespace {

GraphLaplacian zero_lap(Index n) { return laplacian(zero_graph(n)); }

std::vector<Matrix> gram_matrices(const MultiviewDataset& data) {
    std::vector<Matrix> grams;
    for (const Matrix& x : data.views) {
        Matrix g = x.transpose() * x;
        grams.push_back(0.5 * (g + g.transpose()));
    }
    return grams;
}

std::vector<KernelMatrix> centered_linear_kernels(const MultiviewDataset& data) {
    std::vector<KernelMatrix> kernels;
    for (const Matrix& x : data.views) {
        kernels.push_back(center_kernel(linear_kernel(x)));
    }
    return kernels;
}

}  // namespace

TEST_SUITE("dual") {

TEST_CASE("an empty graph makes gamma irrelevant") {
    std::mt19937_64 rng(211);
    const MultiviewDataset data = testutil::random_dataset({12, 15}, 8, rng);
    const DualModel a = fit_gdmcca(data, zero_lap(8), 3.0, {0.5}, 2);
    const DualModel b = fit_gdmcca(data, zero_lap(8), 0.0, {0.5}, 2);
    CHECK((a.S_hat - b.S_hat).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.A[0] - b.A[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("identical views share their duals") {
    std::mt19937_64 rng(223);
    const Matrix x = random_matrix(10, 7, rng);
    const MultiviewDataset data = MultiviewDataset::from_views({x, x});
    const DualModel model = fit_gdmcca(data, zero_lap(7), 0.0, {1e-3}, 2);
    CHECK((model.A[0] - model.A[1]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("epsilon must be positive") {
    std::mt19937_64 rng(227);
    const MultiviewDataset data = testutil::random_dataset({9, 11}, 6, rng);
    CHECK_THROWS_AS(fit_gdmcca(data, zero_lap(6), 0.0, {0.0}, 2), ConfigurationError);
    CHECK_THROWS_AS(fit_gdmcca(data, zero_lap(6), 0.0, {-1.0}, 2), ConfigurationError);
}

TEST_CASE("per-view epsilon broadcasting") {
    std::mt19937_64 rng(229);
    const MultiviewDataset data = testutil::random_dataset({9, 11}, 6, rng);
    const DualModel scalar = fit_gdmcca(data, zero_lap(6), 0.0, {0.3}, 2);
    const DualModel vector = fit_gdmcca(data, zero_lap(6), 0.0, {0.3, 0.3}, 2);
    CHECK((scalar.S_hat - vector.S_hat).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(fit_gdmcca(data, zero_lap(6), 0.0, {0.3, 0.3, 0.3}, 2),
                    ConfigurationError);
}

TEST_CASE("closed form beats projected gradient descent from random starts") {
    std::mt19937_64 rng(233);
    for (int instance = 0; instance < 2; ++instance) {
        const Index n = 10 + 2 * instance;
        const MultiviewDataset data = center_views(
            testutil::random_dataset({n + 5, n + 8}, n, rng));
        const GraphLaplacian lap = laplacian(random_graph(n, rng, 0.5));
        const double gamma = 0.3;
        const double eps = 0.5;
        const Index d = 2;

        const DualModel model = fit_gdmcca(data, lap, gamma, {eps}, d);
        const auto grams = gram_matrices(*model.train_data);
        const double closed_form =
            testutil::dual_cost(grams, model.A, model.S_hat, lap.L, gamma, eps);

        const auto pgd = testutil::pgd_minimize_dual(grams, lap.L, gamma, eps, d,
                                                     /*restarts=*/20,
                                                     /*iterations=*/300, rng);
        CHECK(closed_form <= pgd.best_cost + 1e-5);
    }
}

TEST_CASE("duals are reproducible from the stored pieces") {
    std::mt19937_64 rng(239);
    const MultiviewDataset data = testutil::random_dataset({12, 14}, 8, rng);
    const DualModel model = fit_gdmcca(data, zero_lap(8), 0.2, {0.7}, 3);
    const auto grams = gram_matrices(*model.train_data);
    for (std::size_t m = 0; m < grams.size(); ++m) {
        const Matrix shifted = grams[m] + 0.7 * Matrix::Identity(8, 8);
        const Matrix expected = shifted.inverse() * model.S_hat.transpose();
        CHECK((model.A[m] - expected).cwiseAbs().maxCoeff() <= 1e-7);
    }
}

TEST_CASE("kernel fit with centered linear kernels matches the dual fit") {
    std::mt19937_64 rng(241);
    for (int trial = 0; trial < 3; ++trial) {
        const Index n = 8 + trial;
        const MultiviewDataset data = center_views(
            testutil::random_dataset({n + 4, n + 7}, n, rng));
        const GraphLaplacian lap = laplacian(random_graph(n, rng, 0.5));
        const DualModel dual = fit_gdmcca(data, lap, 0.4, {0.6}, 2, CdForm::derived);
        const DualModel kernel =
            fit_gkmcca(centered_linear_kernels(data), lap, 0.4, {0.6}, 2);
        CHECK(projector_distance(dual.S_hat.transpose(), kernel.S_hat.transpose()) <=
              1e-6);
    }
}

TEST_CASE("printed and derived forms differ but share the machinery") {
    std::mt19937_64 rng(251);
    const MultiviewDataset data = testutil::random_dataset({12, 13}, 8, rng);
    const GraphLaplacian lap = laplacian(random_graph(8, rng));
    const DualModel printed = fit_gdmcca(data, lap, 0.1, {0.5}, 2, CdForm::printed);
    const DualModel derived = fit_gdmcca(data, lap, 0.1, {0.5}, 2, CdForm::derived);
    CHECK(printed.cd_form == CdForm::printed);
    CHECK(derived.cd_form == CdForm::derived);
    CHECK((printed.S_hat * printed.S_hat.transpose() - Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() <= 1e-8);
}

TEST_CASE("isotropic kernels give flat spectrum M/(1+eps)") {
    KernelMatrix identity;
    identity.K = Matrix::Identity(6, 6);
    identity.centered = true;  // bypass centering for this synthetic case
    const std::vector<KernelMatrix> kernels{identity, identity, identity};
    const DualModel model = fit_gkmcca(kernels, zero_lap(6), 0.0, {0.5}, 2);
    for (Index i = 0; i < 2; ++i) {
        CHECK(model.eigenvalues[i] == doctest::Approx(3.0 / 1.5).epsilon(1e-10));
    }
    CHECK((model.S_hat * model.S_hat.transpose() - Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() <= 1e-8);
}

TEST_CASE("uncentered kernels are rejected") {
    std::mt19937_64 rng(257);
    const MultiviewDataset data = testutil::random_dataset({5, 6}, 7, rng);
    std::vector<KernelMatrix> kernels;
    for (const Matrix& x : data.views) kernels.push_back(linear_kernel(x));
    CHECK_THROWS_AS(fit_gkmcca(kernels, zero_lap(7), 0.0, {0.5}, 2), StateError);
}

TEST_CASE("kernel size mismatch is a dimension error") {
    std::mt19937_64 rng(263);
    KernelMatrix small = center_kernel(linear_kernel(random_matrix(4, 5, rng)));
    KernelMatrix large = center_kernel(linear_kernel(random_matrix(4, 6, rng)));
    CHECK_THROWS_AS(fit_gkmcca({small, large}, zero_lap(5), 0.0, {0.5}, 2),
                    DimensionError);
}

TEST_CASE("graph regularization lowers roughness in the kernel fit") {
    std::mt19937_64 rng(269);
    const MultiviewDataset data = testutil::random_dataset({6, 7}, 10, rng);
    // two disconnected cliques
    Matrix w = Matrix::Zero(10, 10);
    for (Index i = 0; i < 10; ++i) {
        for (Index j = i + 1; j < 10; ++j) {
            if ((i < 5) == (j < 5)) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    const GraphLaplacian lap = laplacian(GraphAdjacency::from_weights(w));
    std::vector<KernelMatrix> kernels;
    for (const Matrix& x : data.views) kernels.push_back(center_kernel(gaussian_kernel_auto(x)));
    const DualModel loose = fit_gkmcca(kernels, lap, 0.0, {0.1}, 2);
    const DualModel tight = fit_gkmcca(kernels, lap, 50.0, {0.1}, 2);
    CHECK(trace_quadratic(tight.S_hat, lap.L) <=
          trace_quadratic(loose.S_hat, lap.L) + 1e-10);
}

TEST_CASE("spectra of C_d and C_g stay below M") {
    std::mt19937_64 rng(271);
    for (int trial = 0; trial < 3; ++trial) {
        const Index n = 9;
        const MultiviewDataset data =
            testutil::random_dataset({n + 3, n + 5, n + 1}, n, rng);
        const GraphLaplacian lap = laplacian(random_graph(n, rng));
        const DualModel dual = fit_gdmcca(data, lap, 0.8, {0.4}, n);
        CHECK(dual.eigenvalues[0] <= 3.0 + 1e-9);

        std::vector<KernelMatrix> kernels;
        for (const Matrix& x : data.views) {
            kernels.push_back(center_kernel(gaussian_kernel_auto(x)));
        }
        const DualModel kernel = fit_gkmcca(kernels, lap, 0.8, {0.4}, n);
        CHECK(kernel.eigenvalues[0] <= 3.0 + 1e-9);
    }
}

TEST_CASE("raising epsilon weakly lowers the kernel spectrum") {
    std::mt19937_64 rng(277);
    const MultiviewDataset data = testutil::random_dataset({6, 8}, 9, rng);
    std::vector<KernelMatrix> kernels;
    for (const Matrix& x : data.views) {
        kernels.push_back(center_kernel(gaussian_kernel_auto(x)));
    }
    const GraphLaplacian lap = zero_lap(9);
    const DualModel low = fit_gkmcca(kernels, lap, 0.0, {0.1}, 9);
    const DualModel high = fit_gkmcca(kernels, lap, 0.0, {0.9}, 9);
    for (Index i = 0; i < 9; ++i) {
        CHECK(high.eigenvalues[i] <= low.eigenvalues[i] + 1e-10);
    }
}

TEST_CASE("kernel transform of the training data approaches M S as eps shrinks") {
    std::mt19937_64 rng(281);
    const MultiviewDataset data = testutil::random_dataset({5, 6}, 10, rng);
    std::vector<KernelMatrix> kernels;
    for (const Matrix& x : data.views) {
        kernels.push_back(center_kernel(gaussian_kernel_auto(x)));
    }
    const GraphLaplacian lap = zero_lap(10);
    double previous_error = -1.0;
    for (const double eps : {1e-3, 1e-5}) {
        const DualModel model = fit_gkmcca(kernels, lap, 0.0, {eps}, 2);
        const Matrix embedded = transform_kernel(model, data, data.views);
        const double error = (embedded - 2.0 * model.S_hat).cwiseAbs().maxCoeff();
        if (previous_error >= 0.0) CHECK(error <= previous_error);
        previous_error = error;
    }
    CHECK(previous_error <= 1e-3);
}

TEST_CASE("a duplicated sample embeds exactly like its training twin") {
    std::mt19937_64 rng(283);
    const MultiviewDataset data = testutil::random_dataset({5, 7}, 9, rng);
    std::vector<KernelMatrix> kernels;
    for (const Matrix& x : data.views) {
        kernels.push_back(center_kernel(gaussian_kernel_auto(x)));
    }
    const DualModel model = fit_gkmcca(kernels, zero_lap(9), 0.1, {0.2}, 2);
    const Matrix all_train = transform_kernel(model, data, data.views);
    std::vector<Matrix> twin;
    for (const Matrix& x : data.views) twin.push_back(x.col(4));
    const Matrix embedded = transform_kernel(model, data, twin);
    CHECK((embedded - all_train.col(4)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("kernel transform requires provenance, dual transform requires data") {
    std::mt19937_64 rng(293);
    const MultiviewDataset data = testutil::random_dataset({11, 12}, 7, rng);
    DualModel dual = fit_gdmcca(data, zero_lap(7), 0.0, {0.5}, 2);
    CHECK_THROWS_AS(transform_kernel(dual, data, data.views), StateError);

    std::vector<KernelMatrix> kernels;
    for (const Matrix& x : data.views) {
        kernels.push_back(center_kernel(gaussian_kernel_auto(x)));
    }
    DualModel kernel = fit_gkmcca(kernels, zero_lap(7), 0.0, {0.5}, 2);
    CHECK_THROWS_AS(transform_dual(kernel, data.views), StateError);
}

TEST_CASE("dual transform agrees with explicit loading construction") {
    std::mt19937_64 rng(307);
    const MultiviewDataset raw = testutil::random_dataset({10, 13}, 8, rng);
    const DualModel model = fit_gdmcca(raw, zero_lap(8), 0.3, {0.4}, 2);
    const std::vector<Matrix> new_views{random_matrix(10, 3, rng),
                                        random_matrix(13, 3, rng)};
    const Matrix via_transform = transform_dual(model, new_views);

    Matrix expected = Matrix::Zero(2, 3);
    for (std::size_t m = 0; m < 2; ++m) {
        const Matrix u = model.train_data->views[m] * model.A[m];
        expected += u.transpose() * new_views[m];
    }
    CHECK((via_transform - expected).cwiseAbs().maxCoeff() <= 1e-10);

    CHECK(transform_dual(model, {Matrix::Zero(10, 2), Matrix::Zero(13, 2)})
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

}  // TEST_SUITE
