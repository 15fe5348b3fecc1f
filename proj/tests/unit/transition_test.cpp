#include "lmorse/error.hpp"
#include "lmorse/formats.hpp"
#include "lmorse/synth.hpp"
#include "lmorse/transition.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

namespace lmorse {
namespace {

TrajectoryDataset points_dataset(std::vector<LatentPoint> pts) {
    TrajectoryDataset d;
    d.dim = pts.front().dim();
    d.trajectories.push_back({"t", 1, std::move(pts)});
    if (d.trajectories[0].points.size() == 1) d.trajectories[0].points.push_back(d.trajectories[0].points[0]);
    return d;
}

std::map<CellId, std::vector<CellId>> cell_edges(const TransitionGraph& f) {
    std::map<CellId, std::vector<CellId>> out;
    for (NodeId v = 0; v < f.edges.node_count(); ++v) {
        auto& row = out[f.cell(v)];
        for (NodeId w : f.edges.successors(v)) row.push_back(f.cell(w));
    }
    return out;
}

TransitionGraph contraction_1d_example() {
    const LatentGrid g({4});
    const auto m = DynamicsMap::analytic(AnalyticKind::contraction, 1);
    return build_transition_graph(m, valid_cells(oracle::covering_dataset(g), g), g, RolloutSpec(1), 0.125);
}

TEST(ValidCells, SinglePoint) {
    const LatentGrid g({4, 4});
    const auto c = valid_cells(points_dataset({{0.1, 0.1}}), g);
    EXPECT_EQ(c.size(), 9U);
    EXPECT_EQ(c.data_cell_count(), 1U);
    const CellId data = g.flat_id(CellIndex{{2, 2}});
    ASSERT_TRUE(c.contains(data));
    EXPECT_EQ(c.origin[*c.position(data)], CellOrigin::data);
    for (CellId n : neighbor_ids(data, g)) EXPECT_TRUE(c.contains(n));
}

TEST(ValidCells, CoveringPointsGiveAllCells) {
    const LatentGrid g({5, 3});
    const auto c = valid_cells(oracle::covering_dataset(g), g);
    EXPECT_EQ(c.size(), 15U);
    EXPECT_EQ(c.data_cell_count(), 15U);
}

TEST(ValidCells, TwoDistantPatches) {
    // (-0.6,-0.6) lies in cell (1,1) and (0.6,0.6) in (6,6) of an 8x8 grid:
    // patches rows/cols 0..2 and 5..7, disjoint.
    const LatentGrid g({8, 8});
    const auto c = valid_cells(points_dataset({{-0.6, -0.6}, {0.6, 0.6}}), g);
    std::vector<CellId> want;
    for (std::int64_t base : {0, 5}) {
        for (std::int64_t i = base; i < base + 3; ++i) {
            for (std::int64_t j = base; j < base + 3; ++j) want.push_back(g.flat_id(CellIndex{{i, j}}));
        }
    }
    std::sort(want.begin(), want.end());
    EXPECT_EQ(c.cells, want);
    EXPECT_EQ(c.data_cell_count(), 2U);
}

TEST(ValidCells, RejectsDimensionMismatch) {
    EXPECT_THROW(valid_cells(points_dataset({{0.1}}), LatentGrid({4, 4})), Error);
}

TEST(TransitionGraph, ContractionOneDimensionalExample) {
    const auto f = contraction_1d_example();
    const std::map<CellId, std::vector<CellId>> want{{0, {0, 1}}, {1, {1, 2}}, {2, {1, 2}}, {3, {2, 3}}};
    EXPECT_EQ(cell_edges(f), want);

    // Oracle: 10^4 sampled points per cell pushed through the map land in a successor.
    const LatentGrid g({4});
    const auto m = DynamicsMap::analytic(AnalyticKind::contraction, 1);
    EXPECT_EQ(oracle::soundness_violations(m, g, RolloutSpec(1), 0.125, 10000, 3), 0U);
}

TEST(TransitionGraph, IdentityWithZeroDeltaGivesClosedNeighborhoods) {
    const LatentGrid g({4, 3});
    const DynamicsMap id(DynamicsNet(2, {DenseLayer{2, 2, {1, 0, 0, 1}, {0, 0}, Activation::identity}}));
    const auto f = build_transition_graph(id, valid_cells(oracle::covering_dataset(g), g), g, RolloutSpec(1), 0.0);
    for (const auto& [cell, succ] : cell_edges(f)) {
        auto want = neighbor_ids(cell, g);
        want.push_back(cell);
        std::sort(want.begin(), want.end());
        EXPECT_EQ(succ, want) << "cell " << cell;
    }
}

TEST(TransitionGraph, HugeDeltaGivesCompleteGraph) {
    const LatentGrid g({3, 3});
    const auto m = DynamicsMap::analytic(AnalyticKind::bistable_2d);
    const auto f = build_transition_graph(m, valid_cells(oracle::covering_dataset(g), g), g, RolloutSpec(2),
                                          2.0 * std::sqrt(2.0));
    EXPECT_EQ(f.edges.edge_count(), 81U);
}

TEST(TransitionGraph, SoundOnSampledPoints) {
    for (auto kind : {AnalyticKind::bistable_1d, AnalyticKind::bistable_2d, AnalyticKind::contraction}) {
        const auto m = DynamicsMap::analytic(kind);
        const LatentGrid g = LatentGrid::uniform(m.dim(), m.dim() == 1 ? 16 : 12);
        for (int r : {1, 5}) {
            const RolloutSpec spec(r);
            const double delta = delta_radius(*exact_lipschitz(m, spec), g, 1.0);
            EXPECT_EQ(oracle::soundness_violations(m, g, spec, delta, 200, 17), 0U) << to_string(kind) << " r=" << r;
        }
    }
}

TEST(TransitionGraph, MonotoneInDelta) {
    const LatentGrid g({10, 10});
    const auto m = DynamicsMap::analytic(AnalyticKind::bistable_2d);
    const auto cells = valid_cells(oracle::covering_dataset(g), g);
    const auto small = build_transition_graph(m, cells, g, RolloutSpec(3), 0.05);
    const auto large = build_transition_graph(m, cells, g, RolloutSpec(3), 0.2);
    EXPECT_LT(small.edges.edge_count(), large.edges.edge_count());
    for (NodeId v = 0; v < small.edges.node_count(); ++v) {
        for (NodeId w : small.edges.successors(v)) EXPECT_TRUE(large.edges.has_edge(v, w));
    }
}

TEST(TransitionGraph, ExtraSamplesOnlyAddEdges) {
    const LatentGrid g({10, 10});
    const auto m = DynamicsMap::analytic(AnalyticKind::bistable_2d);
    const auto cells = valid_cells(oracle::covering_dataset(g), g);
    TransitionOptions opts;
    opts.extra_samples_per_cell = 16;
    const auto base = build_transition_graph(m, cells, g, RolloutSpec(3), 0.01);
    const auto more = build_transition_graph(m, cells, g, RolloutSpec(3), 0.01, opts);
    for (NodeId v = 0; v < base.edges.node_count(); ++v) {
        for (NodeId w : base.edges.successors(v)) EXPECT_TRUE(more.edges.has_edge(v, w));
    }
}

TEST(TransitionGraph, RestrictedToValidCellsWithEscapesTallied) {
    // Data only on the right half; the contraction pulls mass out of C.
    const LatentGrid g({8});
    TrajectoryDataset d = points_dataset({{0.9}, {0.8}});
    const auto cells = valid_cells(d, g);
    const auto m = DynamicsMap::analytic(AnalyticKind::contraction, 1);
    const auto f = build_transition_graph(m, cells, g, RolloutSpec(1), 0.05);
    for (NodeId v = 0; v < f.edges.node_count(); ++v) {
        for (NodeId w : f.edges.successors(v)) EXPECT_LT(w, f.nodes.size());
    }
    EXPECT_GT(f.info.escaped_targets, 0U);
    EXPECT_GE(graph_stats(f).exit_cells, 1U);
}

TEST(TransitionGraph, DeterministicAcrossWorkerCounts) {
    const LatentGrid g({24, 24});
    const auto m = DynamicsMap::analytic(AnalyticKind::bistable_2d);
    SynthOptions so;
    so.trajectories = 60;
    const auto cells = valid_cells(synthesize(m, so), g);
    TransitionOptions one, many;
    one.extra_samples_per_cell = many.extra_samples_per_cell = 4;
    many.workers = 3;
    const auto a = build_transition_graph(m, cells, g, RolloutSpec(6), 0.1, one);
    const auto b = build_transition_graph(m, cells, g, RolloutSpec(6), 0.1, many);
    EXPECT_EQ(serialize_graph({"c", "i", a}), serialize_graph({"c", "i", b}));
}

TEST(GraphStats, EmptyEdgeGraph) {
    TransitionGraph f{LatentGrid({3}), ValidCellSet{{0, 1, 2}, {CellOrigin::data, CellOrigin::data, CellOrigin::data}},
                      Digraph::from_rows({{}, {}, {}}), {}};
    const auto s = graph_stats(f);
    EXPECT_EQ(s.edges, 0U);
    EXPECT_EQ(s.nodes, 3U);
    EXPECT_EQ(s.exit_cells, 3U);
}

TEST(GraphStats, CompleteGraph) {
    const LatentGrid g({3, 2});
    const auto m = DynamicsMap::analytic(AnalyticKind::contraction, 2);
    const auto f = build_transition_graph(m, valid_cells(oracle::covering_dataset(g), g), g, RolloutSpec(1), 3.0);
    EXPECT_EQ(graph_stats(f).edges, 36U);
    EXPECT_EQ(graph_stats(f).max_out_degree, 6U);
}

TEST(GraphStats, MatchesAdjacencyRecount) {
    const auto f = contraction_1d_example();
    const auto s = graph_stats(f);
    std::size_t edges = 0, max_out = 0, exits = 0;
    for (const auto& [cell, succ] : cell_edges(f)) {
        edges += succ.size();
        max_out = std::max(max_out, succ.size());
        exits += succ.empty() ? 1 : 0;
    }
    EXPECT_EQ(s.nodes, 4U);
    EXPECT_EQ(s.edges, edges);
    EXPECT_EQ(s.edges, 8U);
    EXPECT_EQ(s.max_out_degree, max_out);
    EXPECT_EQ(s.exit_cells, exits);
}

}  // namespace
}  // namespace lmorse
