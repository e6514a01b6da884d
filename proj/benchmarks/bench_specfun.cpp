#include <benchmark/benchmark.h>

#include "ablation/specfun.hpp"

namespace sf = ablation::specfun;

static void BM_J0_Series(benchmark::State& state) {
    double x = 3.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::j0(x));
        x = x < 15.0 ? x + 1e-9 : 3.7;
    }
}
BENCHMARK(BM_J0_Series);

static void BM_J0_Asymptotic(benchmark::State& state) {
    double x = 120.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::j0(x));
        x += 1e-9;
    }
}
BENCHMARK(BM_J0_Asymptotic);

static void BM_K0_IntegralBridge(benchmark::State& state) {
    double x = 20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::k0(x));
        x = x < 80.0 ? x + 1e-9 : 20.0;
    }
}
BENCHMARK(BM_K0_IntegralBridge);

static void BM_J0Roots(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sf::j0_roots(state.range(0)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_J0Roots)->Range(8, 128)->Complexity();
