// Microbenchmarks for the hot paths: the event scan, the exact stepper, the
// invariant monitors, and the small-fleet oracle.  Fleet sizes come from the
// benchmark argument; states are drawn from the deterministic generator so
// runs are comparable across machines and changes.

#include "dpss/ensemble.hpp"
#include "dpss/event_engine.hpp"
#include "dpss/invariants.hpp"
#include "dpss/oracle.hpp"
#include "dpss/scenario.hpp"
#include "dpss/stepper.hpp"

#include <benchmark/benchmark.h>

#include <cstddef>

namespace {

dpss::Ensemble fleet_of(std::size_t n) {
    dpss::GeneratorConfig cfg;
    cfg.n_min = n;
    cfg.n_max = n;
    cfg.seed = 7701 + n;
    return dpss::random_wf_ensemble(cfg);
}

void BM_EventScan(benchmark::State& state) {
    const dpss::Ensemble ens = fleet_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dpss::flip_on_events(ens));
    }
}
BENCHMARK(BM_EventScan)->Arg(2)->Arg(8)->Arg(32);

void BM_MinImpactScan(benchmark::State& state) {
    const dpss::Ensemble ens = dpss::flip_on_events(
        fleet_of(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dpss::always_smallest_min_time_to_impending_impact(ens));
    }
}
BENCHMARK(BM_MinImpactScan)->Arg(2)->Arg(8)->Arg(32);

void BM_StepToNextEvent(benchmark::State& state) {
    const dpss::Ensemble ens = fleet_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dpss::step_to_next_event(ens));
    }
}
BENCHMARK(BM_StepToNextEvent)->Arg(2)->Arg(8)->Arg(32);

// Full replay to the convergence bound 2n-1: the dominant cost in the
// verification workloads.
void BM_StepTimeToBound(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const dpss::Ensemble ens = fleet_of(n);
    const dpss::Rational bound = 2 * dpss::Rational(n) - 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dpss::step_time(bound, ens));
    }
}
BENCHMARK(BM_StepTimeToBound)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_RunMonitors(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const dpss::Ensemble ens = fleet_of(n);
    const dpss::Rational horizon = 2 * dpss::Rational(n) + 3;
    const dpss::StepBudget budget = dpss::StepBudget::for_duration(horizon, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dpss::run_monitors(ens, horizon, budget));
    }
}
BENCHMARK(BM_RunMonitors)->Arg(2)->Arg(4)->Arg(8);

void BM_OracleEnumerate(benchmark::State& state) {
    const dpss::Ensemble ens = fleet_of(3);
    const dpss::Rational horizon(8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dpss::enumerate_events_small(ens, horizon));
    }
}
BENCHMARK(BM_OracleEnumerate);

void BM_ScenarioRoundTrip(benchmark::State& state) {
    const std::string doc = dpss::emit_scenario(fleet_of(8));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dpss::parse_scenario(doc));
    }
}
BENCHMARK(BM_ScenarioRoundTrip);

}  // namespace

BENCHMARK_MAIN();
