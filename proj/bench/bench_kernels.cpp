// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "gl4st/experiments.hpp"
#include "gl4st/measure.hpp"

using namespace gl4st;

namespace {

const std::vector<MonomialExponent> kMonomials = {MonomialExponent{{1, 0, 0, 0, 0, 0}},
                                                  MonomialExponent{{1, 1, 0, 0, 0, 0}},
                                                  MonomialExponent{{0, 0, 1, 1, 0, 0}}};

cplx fourth_moment(const TorusPoint& x)
{
    return std::norm(elementary_character(1, x)) * std::norm(elementary_character(1, x));
}

void BM_WeylIntegrate(benchmark::State& state)
{
    const TorusGrid grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(weyl_integrate(fourth_moment, grid));
}

void BM_WeylIntegrateSerial(benchmark::State& state)
{
    const TorusGrid grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::weyl_integrate(fourth_moment, grid));
}

void BM_HaarMoments(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(haar_moments(kMonomials, static_cast<std::uint64_t>(state.range(0)), 1));
}

void BM_HaarMomentsSerial(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::haar_moments(kMonomials, static_cast<std::uint64_t>(state.range(0)), 1));
}

FamilyConfig family(std::int64_t n)
{
    FamilyConfig cfg;
    cfg.size = static_cast<std::uint64_t>(n);
    cfg.seed = 1;
    return cfg;
}

void BM_SimulateFamily(benchmark::State& state)
{
    const auto cfg = family(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_family(cfg, kMonomials));
}

void BM_SimulateFamilySerial(benchmark::State& state)
{
    const auto cfg = family(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(serial::simulate_family(cfg, kMonomials));
}

} // namespace

BENCHMARK(BM_WeylIntegrate)->Arg(15)->Arg(31)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WeylIntegrateSerial)->Arg(15)->Arg(31)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HaarMoments)->Arg(1 << 16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HaarMomentsSerial)->Arg(1 << 16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateFamily)->Arg(1 << 14)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateFamilySerial)->Arg(1 << 14)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
