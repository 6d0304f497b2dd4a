#include <benchmark/benchmark.h>

#include "agmetrics/fixtures.hpp"
#include "agmetrics/forecast.hpp"
#include "agmetrics/markov.hpp"
#include "agmetrics/simulate.hpp"

namespace {

const agm::AttackGraph& graph() {
    static const agm::AttackGraph g = agm::fixtures::demo_graph();
    return g;
}

void BM_build_transition_matrix(benchmark::State& state) {
    const agm::LifecycleParams lifecycle;
    for (auto _ : state) {
        auto t = agm::build_transition_matrix(graph(), state.range(0), lifecycle,
                                              agm::ScoringMode::Temporal);
        benchmark::DoNotOptimize(t.entries);
    }
}
BENCHMARK(BM_build_transition_matrix)->Arg(0)->Arg(150);

void BM_fundamental_matrix(benchmark::State& state) {
    const agm::LifecycleParams lifecycle;
    const auto t = agm::build_transition_matrix(graph(), 0, lifecycle, agm::ScoringMode::Temporal);
    for (auto _ : state) {
        auto n = agm::fundamental_matrix(t);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_fundamental_matrix);

void BM_simulate_paths(benchmark::State& state) {
    const agm::LifecycleParams lifecycle;
    const auto t = agm::build_transition_matrix(graph(), 0, lifecycle, agm::ScoringMode::Temporal);
    for (auto _ : state) {
        auto report = agm::simulate_paths(t, 0, state.range(0), 1);
        benchmark::DoNotOptimize(report.path_length_histogram);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_simulate_paths)->Arg(2000)->Arg(100000);

void BM_forecast_series(benchmark::State& state) {
    agm::ForecastConfig config;
    config.horizon_days = state.range(0);
    for (auto _ : state) {
        auto series = agm::forecast_series(graph(), config);
        benchmark::DoNotOptimize(series);
    }
}
BENCHMARK(BM_forecast_series)->Arg(30)->Arg(150);

} // namespace

BENCHMARK_MAIN();
