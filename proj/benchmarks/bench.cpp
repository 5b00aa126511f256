#include <benchmark/benchmark.h>

#include "cutbound/conjecture.hpp"
#include "cutbound/graph.hpp"
#include "cutbound/invariants.hpp"
#include "cutbound/maxcut.hpp"
#include "cutbound/optimizer.hpp"
#include "cutbound/qaoa.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace cutbound;

namespace {

Graph ring(int n, int k) { return generate(WattsStrogatz{k, 0.0}, n, 99); }

QaoaParams params_for(int p) {
    QaoaParams params;
    for (int i = 0; i < p; ++i) {
        params.gamma.push_back(0.3 + 0.1 * i);
        params.beta.push_back(0.2 + 0.05 * i);
    }
    return params;
}

} // namespace

static void BM_Evolve(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Graph g = ring(n, 4);
    QaoaParams params = params_for(2);
    for (auto _ : state) {
        Statevector psi = evolve(g, params);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(BM_Evolve)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Expectation(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Graph g = ring(n, 4);
    Evaluator ev(g);
    QaoaParams params = params_for(1);
    for (auto _ : state) {
        double value = ev.expectation(params);
        benchmark::DoNotOptimize(value);
    }
}
BENCHMARK(BM_Expectation)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

static void BM_OptimizeQaoa(benchmark::State& state) {
    int p = static_cast<int>(state.range(0));
    Graph g = generate(Gnm{20}, 10, 7);
    for (auto _ : state) {
        OptResult r = optimize_qaoa(g, p, 11);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_OptimizeQaoa)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_MaxcutBruteforce(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Graph g = generate(Gnm{2 * n}, n, 5);
    for (auto _ : state) {
        CutResult r = maxcut_bruteforce(g);
        benchmark::DoNotOptimize(r.value);
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(BM_MaxcutBruteforce)->DenseRange(12, 22, 5)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_ChromaticNumber(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Graph g = generate(Gnm{2 * n}, n, 13);
    for (auto _ : state) {
        int chi = chromatic_number(g);
        benchmark::DoNotOptimize(chi);
    }
}
BENCHMARK(BM_ChromaticNumber)->DenseRange(8, 14, 2);

static void BM_IndependenceNumber(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Graph g = generate(Gnm{2 * n}, n, 17);
    for (auto _ : state) {
        int alpha = independence_number(g);
        benchmark::DoNotOptimize(alpha);
    }
}
BENCHMARK(BM_IndependenceNumber)->DenseRange(8, 14, 2);

static void BM_InvariantVector(benchmark::State& state) {
    Graph g = generate(Gnm{28}, 14, 23);
    for (auto _ : state) {
        InvariantVector inv = invariant_vector(g);
        benchmark::DoNotOptimize(inv.clustering);
    }
}
BENCHMARK(BM_InvariantVector);

static void BM_GenerateConjectures(benchmark::State& state) {
    KnowledgeTable table;
    for (int i = 0; i < 200; ++i) {
        KnowledgeRow row;
        row.instance_id = "r" + std::to_string(i);
        row.model_kind = "gnm";
        row.invariants.n = 6 + i % 9;
        row.invariants.m = 2 * row.invariants.n;
        row.invariants.mean_degree = 4.0;
        row.invariants.clustering = 0.1 + 0.002 * (i % 50);
        row.invariants.chromatic = 3 + i % 2;
        row.invariants.mis_ratio = 0.4 + 0.001 * (i % 30);
        row.invariants.assortativity = -0.2 + 0.01 * (i % 40);
        row.invariants.degree_std = 0.5 + 0.01 * (i % 20);
        row.depth = 1;
        row.gamma_star = {0.5 + 0.001 * i};
        row.beta_star_abs = {0.3 + 0.0005 * i};
        row.expectation = 0.8 * row.invariants.m;
        row.maxcut = row.invariants.m - 2;
        row.ratio = row.expectation / row.maxcut;
        row.obj_calls = 300 + i;
        row.seed = static_cast<std::uint64_t>(i);
        table.rows.push_back(row);
    }
    EngineConfig cfg;
    for (auto _ : state) {
        auto conjs = generate_conjectures(table, cfg);
        benchmark::DoNotOptimize(conjs.size());
    }
}
BENCHMARK(BM_GenerateConjectures)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
