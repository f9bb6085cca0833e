#include <benchmark/benchmark.h>

#include <random>

#include "mvgcca/dual.hpp"
#include "mvgcca/kernels.hpp"
#include "mvgcca/linalg.hpp"
#include "mvgcca/mcca.hpp"
#include "mvgcca/metrics.hpp"
#include "mvgcca/synth.hpp"

namespace {

using namespace mvgcca;

Matrix random_symmetric(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) a(i, j) = gauss(rng);
    }
    return 0.5 * (a + a.transpose());
}

SynthData synth_instance(Index n) {
    SynthSpec spec;
    spec.n = n;
    spec.m = 3;
    spec.rho = 3;
    spec.dims = {20, 30, 40};
    spec.noise_std = 0.5;
    spec.clusters = 3;
    spec.seed = 42;
    return generate(spec);
}

void BM_SymEigTopd(benchmark::State& state) {
    const Index n = state.range(0);
    const Matrix a = random_symmetric(n, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sym_eig_topd(a, 5));
    }
}
BENCHMARK(BM_SymEigTopd)->Unit(benchmark::kMillisecond)->Arg(100)->Arg(200)->Arg(400);

void BM_FitGmcca(benchmark::State& state) {
    const SynthData synth = synth_instance(state.range(0));
    const GraphLaplacian lap = laplacian(synth.graph);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_gmcca(synth.data, lap, 0.1, 3));
    }
}
BENCHMARK(BM_FitGmcca)->Unit(benchmark::kMillisecond)->Arg(100)->Arg(200)->Arg(400);

void BM_FitGkmcca(benchmark::State& state) {
    const SynthData synth = synth_instance(state.range(0));
    const GraphLaplacian lap = laplacian(synth.graph);
    std::vector<KernelMatrix> kernels;
    for (const Matrix& x : synth.data.views) {
        kernels.push_back(center_kernel(gaussian_kernel_auto(x)));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_gkmcca(kernels, lap, 0.1, {0.5}, 3));
    }
}
BENCHMARK(BM_FitGkmcca)->Unit(benchmark::kMillisecond)->Arg(100)->Arg(200)->Arg(400);

void BM_GaussianKernel(benchmark::State& state) {
    const SynthData synth = synth_instance(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_kernel_auto(synth.data.views[0]));
    }
}
BENCHMARK(BM_GaussianKernel)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(400);

void BM_Kmeans(benchmark::State& state) {
    const SynthData synth = synth_instance(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kmeans(synth.sources, 3, 5));
    }
}
BENCHMARK(BM_Kmeans)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
