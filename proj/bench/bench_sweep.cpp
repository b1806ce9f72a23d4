// Parallel kernels against their serial references.

#include "wellfn/fit.hpp"
#include "wellfn/grid.hpp"
#include "wellfn/kernel.hpp"
#include "wellfn/sweep.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace wellfn;

namespace {

GridSpec grid_of(benchmark::State& state) {
    return {1e-3, 100.0, static_cast<int>(state.range(0)), Spacing::log};
}

void BM_SweepSerial(benchmark::State& state) {
    const GridSpec g = grid_of(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_serial(ApproxKind::proposed, g, SweepTarget::value));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
    const GridSpec g = grid_of(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(ApproxKind::proposed, g, SweepTarget::value));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = omp_get_max_threads();
}

AquiferCase dense_case(benchmark::State& state) {
    AquiferCase c;
    c.radii.clear();
    for (int i = 1; i <= state.range(0); ++i) c.radii.push_back(50.0 * i);
    c.t_end = 200.0;
    c.t_step = 0.5;
    return c;
}

void BM_KernelSerial(benchmark::State& state) {
    const AquiferCase c = dense_case(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_sweep_serial(c, ApproxKind::proposed));
    }
}

void BM_KernelParallel(benchmark::State& state) {
    const AquiferCase c = dense_case(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_sweep(c, ApproxKind::proposed));
    }
}

void BM_FitResiduals(benchmark::State& state) {
    const auto grid = fit_default_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_residuals(grid, published_coefficients));
    }
}

void BM_FitNeutral(benchmark::State& state) {
    const auto grid = fit_default_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_eq9(grid, {1.0, 1.0, 1.0, 1.0, 1.0}));
    }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(2000)->Arg(200000);
BENCHMARK(BM_SweepParallel)->Arg(2000)->Arg(200000);
BENCHMARK(BM_KernelSerial)->Arg(4)->Arg(100);
BENCHMARK(BM_KernelParallel)->Arg(4)->Arg(100);
BENCHMARK(BM_FitResiduals)->Arg(500);
BENCHMARK(BM_FitNeutral)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
