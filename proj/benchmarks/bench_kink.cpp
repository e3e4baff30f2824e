#include "bpskink/analysis.hpp"
#include "bpskink/closed_form.hpp"
#include "bpskink/solvers.hpp"

#include <benchmark/benchmark.h>

using namespace bpskink;

static void BM_AlphaOfX(benchmark::State& state) {
    const ImplicitSolution sol(ModelParams(1.0, 1.0), 0.0, KinkSign::minus);
    double x = -8.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sol.alpha(x));
        x = x > 8.0 ? -8.0 : x + 0.01;
    }
}
BENCHMARK(BM_AlphaOfX);

static void BM_ClosedFormProfile(benchmark::State& state) {
    const ModelParams p(1.0, 1.0);
    const ImplicitSolution sol(p, 0.0, KinkSign::minus);
    const Grid g = default_grid(p, 0.0, SolverConfig{}, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(closed_form_profile(sol, g));
    }
}
BENCHMARK(BM_ClosedFormProfile)->Arg(201)->Arg(2001);

static void BM_IntegrateBps(benchmark::State& state) {
    const ModelParams p(1.0, 1.0);
    const SolverConfig cfg;
    const Grid g = default_grid(p, 0.0, cfg, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_bps(p, 0.0, KinkSign::minus, cfg, g));
    }
}
BENCHMARK(BM_IntegrateBps)->Arg(201)->Arg(2001);

static void BM_SecondOrderBvp(benchmark::State& state) {
    const ModelParams p(1.0, 1.0);
    const SolverConfig cfg;
    const Grid g = default_grid(p, 0.0, cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_second_order_bvp(p, cfg, g));
    }
}
BENCHMARK(BM_SecondOrderBvp)->Unit(benchmark::kMillisecond);

static void BM_EnergyChargeReport(benchmark::State& state) {
    const ModelParams p = ModelParams::from_kappa(static_cast<double>(state.range(0)), 1.0);
    const SolverConfig cfg;
    const KinkProfile prof =
        closed_form_profile(ImplicitSolution(p, 0.0, KinkSign::minus), default_grid(p, 0.0, cfg));
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy_charge_report(prof, cfg));
    }
}
BENCHMARK(BM_EnergyChargeReport)->Arg(1)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
