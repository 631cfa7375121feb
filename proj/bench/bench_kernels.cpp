#include <benchmark/benchmark.h>

#include <random>

#include "rewardlab/kernels.hpp"

using namespace rewardlab;

namespace {

feature_set random_features(int n, int dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<dvec> vectors(static_cast<size_t>(n), dvec(static_cast<size_t>(dim)));
    for (auto& v : vectors)
        for (double& x : v) x = normal(rng);
    return make_feature_set(dim, std::move(vectors));
}

dvec random_vector(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    dvec v(static_cast<size_t>(n));
    for (double& x : v) x = normal(rng);
    return v;
}

void bm_softmax_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const dvec logits = random_vector(n, 1);
    for (auto _ : state) {
        dvec x = logits;
        kernels::serial::softmax_in_place(x);
        benchmark::DoNotOptimize(x.data());
    }
}

void bm_softmax_parallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const dvec logits = random_vector(n, 1);
    for (auto _ : state) {
        dvec x = logits;
        kernels::parallel::softmax_in_place(x);
        benchmark::DoNotOptimize(x.data());
    }
}

void bm_weighted_feature_sum_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    constexpr int dim = 16;
    const feature_set fs = random_features(n, dim, 2);
    const dvec w = random_vector(n, 3);
    dvec out;
    for (auto _ : state) {
        kernels::serial::weighted_feature_sum(fs, w, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_weighted_feature_sum_parallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    constexpr int dim = 16;
    const feature_set fs = random_features(n, dim, 2);
    const dvec w = random_vector(n, 3);
    dvec out;
    for (auto _ : state) {
        kernels::parallel::weighted_feature_sum(fs, w, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_dot_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const dvec a = random_vector(n, 4);
    const dvec b = random_vector(n, 5);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::dot(a.data(), b.data(), n));
}

void bm_dot_parallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const dvec a = random_vector(n, 4);
    const dvec b = random_vector(n, 5);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::dot(a.data(), b.data(), n));
}

}  // namespace

BENCHMARK(bm_softmax_serial)->RangeMultiplier(8)->Range(1 << 10, 1 << 21);
BENCHMARK(bm_softmax_parallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 21);
BENCHMARK(bm_weighted_feature_sum_serial)->RangeMultiplier(8)->Range(1 << 10, 1 << 18);
BENCHMARK(bm_weighted_feature_sum_parallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 18);
BENCHMARK(bm_dot_serial)->RangeMultiplier(8)->Range(1 << 10, 1 << 21);
BENCHMARK(bm_dot_parallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 21);

BENCHMARK_MAIN();
