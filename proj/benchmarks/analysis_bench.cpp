#include "lmorse/dynamics.hpp"
#include "lmorse/morse.hpp"
#include "lmorse/synth.hpp"
#include "lmorse/transition.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace lmorse;

ValidCellSet bistable_cells(const LatentGrid& g) {
    SynthOptions so;
    so.trajectories = 500;
    return valid_cells(synthesize(DynamicsMap::analytic(AnalyticKind::bistable_2d), so), g);
}

// Args: cells per axis, workers.
void BM_TransitionBuild(benchmark::State& state) {
    const auto g = LatentGrid::uniform(2, state.range(0));
    const auto m = DynamicsMap::analytic(AnalyticKind::bistable_2d);
    const auto cells = bistable_cells(g);
    const RolloutSpec spec(12);
    const double delta = delta_radius(*exact_lipschitz(m, spec), g, 1.0);
    TransitionOptions opts;
    opts.workers = static_cast<unsigned>(state.range(1));
    std::size_t edges = 0;
    for (auto _ : state) {
        const auto f = build_transition_graph(m, cells, g, spec, delta, opts);
        edges = f.edges.edge_count();
        benchmark::DoNotOptimize(edges);
    }
    state.counters["cells"] = static_cast<double>(cells.size());
    state.counters["edges"] = static_cast<double>(edges);
}
BENCHMARK(BM_TransitionBuild)->Args({16, 1})->Args({32, 1})->Args({64, 1})->Args({64, 4})->Unit(benchmark::kMillisecond);

void BM_Lipschitz(benchmark::State& state) {
    const auto m = DynamicsMap::analytic(AnalyticKind::bistable_2d);
    LipschitzOptions opts;
    opts.domain_samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_lipschitz(m, RolloutSpec(12), opts));
}
BENCHMARK(BM_Lipschitz)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

Digraph random_graph(std::size_t n, std::size_t out_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    std::vector<std::vector<NodeId>> rows(n);
    for (auto& row : rows) {
        for (std::size_t k = 0; k < out_degree; ++k) row.push_back(pick(rng));
    }
    return Digraph::from_rows(std::move(rows));
}

void BM_Scc(benchmark::State& state) {
    const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(strongly_connected_components(g).components.size());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.node_count() + g.edge_count()));
}
BENCHMARK(BM_Scc)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_MorseAndRoa(benchmark::State& state) {
    const auto g = LatentGrid::uniform(2, state.range(0));
    const auto m = DynamicsMap::analytic(AnalyticKind::bistable_2d);
    const RolloutSpec spec(12);
    const auto f = build_transition_graph(m, bistable_cells(g), g, spec,
                                          delta_radius(*exact_lipschitz(m, spec), g, 1.0));
    for (auto _ : state) {
        const auto mg = build_morse_graph(f);
        benchmark::DoNotOptimize(regions_of_attraction(f, mg).entries.size());
    }
}
BENCHMARK(BM_MorseAndRoa)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
