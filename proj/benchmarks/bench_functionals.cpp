#include <benchmark/benchmark.h>

#include "tricycle/dynamics_oracle.hpp"
#include "tricycle/protocol.hpp"
#include "tricycle/superop.hpp"
#include "tricycle/thermo_geometry.hpp"
#include "tricycle/tls_model.hpp"

using namespace tricycle;

namespace {

CycleConfig caption() { return make_cycle(caption_defaults()); }

void BM_Drazin(benchmark::State& state) {
    const Superop l = liouvillian(3.0, 1.7, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(drazin(l));
}
BENCHMARK(BM_Drazin);

void BM_DrazinClosedForm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(drazin_tls(3.0, 1.7, 0.4));
}
BENCHMARK(BM_DrazinClosedForm);

// Arg is the Simpson node count.
void BM_Sigma(benchmark::State& state) {
    const BranchProtocol b = caption().cold();
    const QuadratureSpec spec{static_cast<int>(state.range(0)), 1};
    for (auto _ : state) benchmark::DoNotOptimize(sigma(b, spec));
}
BENCHMARK(BM_Sigma)->Arg(201)->Arg(801)->Arg(3201);

void BM_Length(benchmark::State& state) {
    const BranchProtocol b = caption().cold();
    const QuadratureSpec spec{static_cast<int>(state.range(0)), 1};
    for (auto _ : state) benchmark::DoNotOptimize(thermo_length(b, spec));
}
BENCHMARK(BM_Length)->Arg(201)->Arg(801)->Arg(3201);

void BM_CycleMetrics(benchmark::State& state) {
    const CycleConfig c = with_durations(caption(), 20.0, 9.0, 30.0);
    for (auto _ : state) benchmark::DoNotOptimize(cycle_metrics(c));
}
BENCHMARK(BM_CycleMetrics)->Unit(benchmark::kMillisecond);

// Grid points reuse duration-independent functionals.
void BM_CycleMetricsCached(benchmark::State& state) {
    const CycleConfig c = with_durations(caption(), 20.0, 9.0, 30.0);
    const auto f = cycle_functionals(c);
    for (auto _ : state) benchmark::DoNotOptimize(cycle_metrics(c, f));
}
BENCHMARK(BM_CycleMetricsCached);

void BM_EvolveBranch(benchmark::State& state) {
    const CycleConfig c = with_durations(caption(), state.range(0), 1.0, 1.0);
    const BranchProtocol& b = c.cold();
    const StateVec g = gibbs_state(omega(b, 0.0), b.reservoir.beta, b.hbar);
    const int steps = default_steps(b);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_branch(b, g, steps));
    state.counters["steps"] = steps;
}
BENCHMARK(BM_EvolveBranch)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
