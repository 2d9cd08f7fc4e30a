#include <benchmark/benchmark.h>

#include <cmath>

#include "kconn/connectivity.hpp"
#include "kconn/ensembles.hpp"
#include "kconn/mc.hpp"
#include "kconn/rng.hpp"
#include "kconn/theory.hpp"

namespace {

void BM_SampleEr(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double p = kconn::theory::er_threshold(n, 2, 1.0);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        kconn::RngStream rng(42, stream++);
        benchmark::DoNotOptimize(kconn::sample_er(kconn::ErSpec{n, p}, rng));
    }
}
BENCHMARK(BM_SampleEr)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_SampleRgg(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double r = kconn::theory::rgg_threshold_radius(n, 1, 1.0);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        kconn::RngStream rng(42, stream++);
        benchmark::DoNotOptimize(kconn::sample_rgg(kconn::RggSpec{n, r}, rng));
    }
}
BENCHMARK(BM_SampleRgg)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_IsKConnectedNearThreshold(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const double p = kconn::theory::er_threshold(n, k, 1.0);
    kconn::RngStream rng(7, 0);
    const kconn::Graph g = kconn::sample_er(kconn::ErSpec{n, p}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(kconn::is_k_connected(g, k));
}
BENCHMARK(BM_IsKConnectedNearThreshold)
    ->Args({1000, 1})
    ->Args({1000, 2})
    ->Args({1000, 3})
    ->Args({4000, 3});

void BM_BreakdownTrialPipeline(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    kconn::mc::EstimateRequest req;
    req.ensemble.family = kconn::ErSpec{n, kconn::theory::er_threshold(n, 2, 0.5)};
    req.k = 2;
    req.epsilon = 0.5;
    req.trials = 64;
    req.master_seed = 11;
    req.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(kconn::mc::estimate_breakdown(req));
}
BENCHMARK(BM_BreakdownTrialPipeline)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
