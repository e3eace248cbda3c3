#include "atd/alt_invariants.hpp"
#include "atd/canonical.hpp"
#include "atd/census.hpp"
#include "atd/constructions.hpp"
#include "atd/fp_group.hpp"

#include <benchmark/benchmark.h>

using namespace atd;

static void BM_GwCatalogue(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(gw_catalogue(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GwCatalogue)->Arg(200)->Arg(1000);

static void BM_CanonicalForm(benchmark::State &state)
{
    auto d = generalised_wreath(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_form(d));
}
BENCHMARK(BM_CanonicalForm)->Arg(8)->Arg(16)->Arg(32);

static void BM_AutomorphismGroup(benchmark::State &state)
{
    auto d = generalised_wreath(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(automorphism_group(d).order());
}
BENCHMARK(BM_AutomorphismGroup)->Arg(16)->Arg(64);

static void BM_LowIndexNormal(benchmark::State &state)
{
    auto p = universal_catalogue(2).back().presentation;
    for (auto _ : state)
        benchmark::DoNotOptimize(low_index_normal_quotients(p, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_LowIndexNormal)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_AlterInvariants(benchmark::State &state)
{
    auto d = generalised_wreath(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(alter_invariants(d));
}
BENCHMARK(BM_AlterInvariants)->Arg(8)->Arg(16);

static void BM_Census(benchmark::State &state)
{
    CensusConfig cfg;
    cfg.m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_census(cfg).entries.size());
}
BENCHMARK(BM_Census)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
