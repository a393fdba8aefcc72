#include <hatdeg/certifier.hpp>
#include <hatdeg/density.hpp>
#include <hatdeg/elimination.hpp>
#include <hatdeg/exact_game.hpp>
#include <hatdeg/graph.hpp>

#include <benchmark/benchmark.h>

using namespace hatdeg;

namespace {

void BM_StrongElimination(benchmark::State & state)
{
    const auto g = generate(FamilySpec::gnp(static_cast<int>(state.range(0)), 0.05, 7));
    for (auto _ : state)
        benchmark::DoNotOptimize(strong_degeneracy(g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrongElimination)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_DensestSubgraph(benchmark::State & state)
{
    const auto g = generate(FamilySpec::gnp(static_cast<int>(state.range(0)), 0.1, 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(max_subgraph_density(g));
}
BENCHMARK(BM_DensestSubgraph)->RangeMultiplier(2)->Range(32, 256);

void BM_CertifyOuterplanar(benchmark::State & state)
{
    const auto g = generate(FamilySpec::maximal_outerplanar(static_cast<int>(state.range(0)), 11));
    for (auto _ : state)
        benchmark::DoNotOptimize(certify_outerplanar(g));
}
BENCHMARK(BM_CertifyOuterplanar)->Arg(50)->Arg(200);

// Cycles at their first losing number of colours: full unwinnability proofs.
void BM_ExactCycle(benchmark::State & state)
{
    const int n = static_cast<int>(state.range(0)), q = static_cast<int>(state.range(1));
    const auto g = generate(FamilySpec::cycle(n));
    const auto budgets = unit_budgets(n);
    SolverOptions options;
    for (auto _ : state) {
        auto r = decide_winnable(g, budgets, q, options);
        state.counters["decisions"] = static_cast<double>(r.stats.nodes);
    }
}
BENCHMARK(BM_ExactCycle)->Args({5, 3})->Args({6, 4})->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_ExactK23(benchmark::State & state)
{
    const auto g = generate(FamilySpec::complete_bipartite(2, 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(decide_winnable(g, unit_budgets(5), 4));
}
BENCHMARK(BM_ExactK23)->Unit(benchmark::kMillisecond)->Iterations(1);

}

BENCHMARK_MAIN();
