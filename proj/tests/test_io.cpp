#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "helpers.hpp"
#include "mvgcca/io.hpp"
#include "mvgcca/model_io.hpp"
#include "mvgcca/pipeline.hpp"

using namespace mvgcca;
using testutil::random_matrix;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("mvgcca_io_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const char* text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("loading two view files builds an aligned dataset") {
    TempDir dir;
    write_text(dir.file("a.csv"), "1,2\n3,4\n5,6\n");
    write_text(dir.file("b.csv"), "7\n8\n9\n");
    const MultiviewDataset data = load_dataset({dir.file("a.csv"), dir.file("b.csv")});
    CHECK(data.num_views() == 2);
    CHECK(data.num_samples() == 3);
    CHECK(data.views[0].rows() == 2);   // columns become features
    CHECK(data.views[0](0, 2) == 5.0);  // third sample, first feature
    CHECK(data.views[1](0, 1) == 8.0);
}

TEST_CASE("sample-count mismatch across views is rejected") {
    TempDir dir;
    write_text(dir.file("a.csv"), "1,2\n3,4\n");
    write_text(dir.file("b.csv"), "7\n8\n9\n");
    CHECK_THROWS_AS(load_dataset({dir.file("a.csv"), dir.file("b.csv")}), IoError);
}

TEST_CASE("parse errors name file, row, and column") {
    TempDir dir;
    write_text(dir.file("bad.csv"), "1,2\n3,oops\n");
    try {
        load_csv_matrix(dir.file("bad.csv"));
        FAIL("expected IoError");
    } catch (const IoError& e) {
        const std::string message = e.what();
        CHECK(message.find("bad.csv") != std::string::npos);
        CHECK(message.find("row 2") != std::string::npos);
        CHECK(message.find("column 2") != std::string::npos);
    }
}

TEST_CASE("ragged rows are rejected") {
    TempDir dir;
    write_text(dir.file("ragged.csv"), "1,2\n3\n");
    CHECK_THROWS_AS(load_csv_matrix(dir.file("ragged.csv")), IoError);
}

TEST_CASE("non-finite cells are rejected") {
    TempDir dir;
    write_text(dir.file("inf.csv"), "1,inf\n2,3\n");
    CHECK_THROWS_AS(load_csv_matrix(dir.file("inf.csv")), IoError);
}

TEST_CASE("matrix round trip is bitwise exact") {
    TempDir dir;
    std::mt19937_64 rng(449);
    const Matrix original = random_matrix(7, 5, rng, 3.7);
    save_csv_matrix(original, dir.file("m.csv"));
    const Matrix loaded = load_csv_matrix(dir.file("m.csv"));
    REQUIRE(loaded.rows() == original.rows());
    REQUIRE(loaded.cols() == original.cols());
    for (Index r = 0; r < original.rows(); ++r) {
        for (Index c = 0; c < original.cols(); ++c) {
            CHECK(loaded(r, c) == original(r, c));
        }
    }
}

TEST_CASE("dataset round trip is bitwise exact") {
    TempDir dir;
    std::mt19937_64 rng(457);
    const MultiviewDataset data = testutil::random_dataset({3, 4}, 6, rng);
    const std::vector<std::string> paths{dir.file("v1.csv"), dir.file("v2.csv")};
    save_dataset(data, paths);
    const MultiviewDataset loaded = load_dataset(paths);
    for (std::size_t m = 0; m < 2; ++m) {
        CHECK(matrix_hash(loaded.views[m]) == matrix_hash(data.views[m]));
    }
}

TEST_CASE("labels round trip and validation") {
    TempDir dir;
    const std::vector<int> labels{2, 0, 1, 1, 2};
    save_labels(labels, dir.file("labels.csv"));
    CHECK(load_labels(dir.file("labels.csv"), 5) == labels);

    write_text(dir.file("short.csv"), "0,1\n1,2\n");
    CHECK_THROWS_AS(load_labels(dir.file("short.csv"), 3), IoError);
    write_text(dir.file("dup.csv"), "0,1\n0,2\n");
    CHECK_THROWS_AS(load_labels(dir.file("dup.csv"), 2), IoError);
}

TEST_CASE("primal model JSON round trip preserves every number") {
    TempDir dir;
    std::mt19937_64 rng(461);
    const MultiviewDataset raw = testutil::random_dataset({3, 4}, 8, rng);
    pipeline::FitConfig config;
    config.variant = Variant::gmcca;
    config.d = 2;
    config.gamma = 0.25;
    const GraphAdjacency graph = testutil::random_graph(8, rng);
    ModelFile model = pipeline::run_fit(config, raw, &graph);
    save_model(model, dir.file("model.json"));
    const ModelFile loaded = load_model(dir.file("model.json"));

    REQUIRE(loaded.primal.has_value());
    CHECK(loaded.variant == Variant::gmcca);
    CHECK(loaded.primal->gamma == model.primal->gamma);
    CHECK(matrix_hash(loaded.primal->S_hat) == matrix_hash(model.primal->S_hat));
    for (std::size_t m = 0; m < 2; ++m) {
        CHECK(matrix_hash(loaded.primal->U[m]) == matrix_hash(model.primal->U[m]));
        CHECK(loaded.train_hashes[m] == model.train_hashes[m]);
        CHECK((loaded.train_means[m] - model.train_means[m]).cwiseAbs().maxCoeff() ==
              0.0);
    }
    CHECK(loaded.train_samples == 8);
}

TEST_CASE("kernel model JSON carries provenance and dual rebinding checks hashes") {
    TempDir dir;
    std::mt19937_64 rng(463);
    const MultiviewDataset raw = testutil::random_dataset({9, 10}, 7, rng);

    pipeline::FitConfig config;
    config.variant = Variant::gkmcca;
    config.d = 2;
    config.epsilon = {0.4};
    ModelFile kernel_model = pipeline::run_fit(config, raw, nullptr);
    save_model(kernel_model, dir.file("kernel.json"));
    const ModelFile kernel_loaded = load_model(dir.file("kernel.json"));
    REQUIRE(kernel_loaded.dual.has_value());
    REQUIRE(kernel_loaded.dual->kernel.has_value());
    CHECK((*kernel_loaded.dual->kernel)[0].family == KernelFamily::gaussian);
    CHECK((*kernel_loaded.dual->kernel)[0].sigma ==
          (*kernel_model.dual->kernel)[0].sigma);

    config.variant = Variant::gdmcca;
    ModelFile dual_model = pipeline::run_fit(config, raw, nullptr);
    save_model(dual_model, dir.file("dual.json"));
    ModelFile dual_loaded = load_model(dir.file("dual.json"));
    CHECK_FALSE(dual_loaded.dual->train_data);
    bind_train_data(dual_loaded, raw);
    CHECK(dual_loaded.dual->train_data != nullptr);

    // tampered training data fails the hash check
    MultiviewDataset tampered = raw;
    tampered.views[0](0, 0) += 1.0;
    ModelFile dual_again = load_model(dir.file("dual.json"));
    CHECK_THROWS_AS(bind_train_data(dual_again, tampered), InputError);
}

}  // TEST_SUITE
