#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>

#include "colldec/decoherence.hpp"
#include "colldec/dynamics.hpp"
#include "colldec/grid.hpp"
#include "colldec/quadrature.hpp"

using namespace colldec;

namespace
{
auto const natural = PhysicalConstants::natural();
BathParams const unit_bath{1.0, 1.0, 1.0};
auto const hard_sphere = ScatteringModel::hard_sphere(1.0);
}  // namespace

static void BM_Integrate1D(benchmark::State& state)
{
    double const k = static_cast<double>(state.range(0));
    for (auto _ : state)
    {
        auto e = integrate_1d([k](double x) { return std::cos(k * x) * std::exp(-x); },
                              0.0, 10.0);
        benchmark::DoNotOptimize(e.value);
    }
}
BENCHMARK(BM_Integrate1D)->Arg(1)->Arg(100);

static void BM_FOfR(benchmark::State& state)
{
    double const r = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state)
    {
        auto e = f_of_r_reduced(hard_sphere, unit_bath, r, natural);
        benchmark::DoNotOptimize(e.value);
    }
}
BENCHMARK(BM_FOfR)->Arg(1)->Arg(10)->Arg(350)->Unit(benchmark::kMillisecond);

static void BM_LambdaQuadrature(benchmark::State& state)
{
    for (auto _ : state)
    {
        auto e = lambda_quadrature(hard_sphere, unit_bath, natural);
        benchmark::DoNotOptimize(e.value);
    }
}
BENCHMARK(BM_LambdaQuadrature)->Unit(benchmark::kMicrosecond);

// 10 split-step updates of an n x n density matrix
static void BM_GridSteps(benchmark::State& state)
{
    auto const n = static_cast<std::size_t>(state.range(0));
    auto const g0 = GridState::gaussian(n, 16.0, 1.0);
    for (auto _ : state)
    {
        auto g = evolve_grid(g0, 1.0, 1.0, 0.01, 10, natural);
        benchmark::DoNotOptimize(g.trace());
    }
}
BENCHMARK(BM_GridSteps)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
