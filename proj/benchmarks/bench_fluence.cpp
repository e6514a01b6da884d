#include <benchmark/benchmark.h>

#include "ablation/fluence.hpp"
#include "ablation/params.hpp"
#include "ablation/scenario.hpp"

using namespace ablation;

namespace {

scenario::Scenario breast_scenario() {
    scenario::Overrides ov;
    ov.g = 0.9;
    return scenario::make_scenario(params::builtin_registry(), "breast", ov);
}

}  // namespace

static void BM_PhiInPulse(benchmark::State& state) {
    auto s = breast_scenario();
    double z = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            fluence::phi_in_pulse(s.field.inner, s.field.protocol, z, 5e-13));
        z = z < 4e-3 ? z + 1e-6 : 0.0;
    }
}
BENCHMARK(BM_PhiInPulse);

static void BM_FieldConstruction(benchmark::State& state) {
    auto s = breast_scenario();
    s.field.series_terms = static_cast<int>(state.range(0));
    for (auto _ : state) {
        fluence::Field phi(s.field);
        benchmark::DoNotOptimize(phi.u0());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FieldConstruction)->Range(8, 64)->Complexity();

static void BM_InterpulseEvaluation(benchmark::State& state) {
    auto s = breast_scenario();
    fluence::Field phi(s.field);
    const auto& p = s.field.protocol;
    double r = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi(r, 1e-4, p.t_p + 0.3 * p.delta_t));
        r = r < p.r_f ? r + 1e-6 : 0.0;
    }
}
BENCHMARK(BM_InterpulseEvaluation);
