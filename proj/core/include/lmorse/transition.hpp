#pragma once

#include "lmorse/dataset.hpp"
#include "lmorse/digraph.hpp"
#include "lmorse/dynamics.hpp"
#include "lmorse/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lmorse {

enum class CellOrigin : std::uint8_t { data, neighbor };

/// Cells C holding at least one data point, plus their Moore neighbors.
/// Kept sorted by flat id; graph node i is cells[i].
struct ValidCellSet {
    std::vector<CellId> cells;
    std::vector<CellOrigin> origin;

    std::size_t size() const { return cells.size(); }
    std::optional<NodeId> position(CellId id) const;
    bool contains(CellId id) const { return position(id).has_value(); }
    std::size_t data_cell_count() const;
};

struct BuildInfo {
    int rollout_steps = 1;
    double delta = 0.0;
    double lipschitz = 0.0;
    std::size_t extra_samples_per_cell = 0;
    std::string dataset_digest;
    std::string dynamics_digest;
    /// Union targets dropped because they fall outside C, over all cells.
    std::uint64_t escaped_targets = 0;
    /// All union targets before restriction to C.
    std::uint64_t total_targets = 0;
};

/// Outer approximation F of the r-step latent dynamics over C.
struct TransitionGraph {
    LatentGrid grid;
    ValidCellSet nodes;
    Digraph edges;
    BuildInfo info;

    CellId cell(NodeId v) const { return nodes.cells[v]; }
};

struct TransitionOptions {
    /// Extra uniformly sampled points per cell pushed through the map, in
    /// addition to the 2^d corners. Only ever adds edges.
    std::size_t extra_samples_per_cell = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

ValidCellSet valid_cells(const TrajectoryDataset& dataset, const LatentGrid& g);

/// Cells hit by the delta-balls around the clamped r-step images of the
/// corners of `cell`, before restriction to C. Sorted by flat id.
std::vector<CellId> cell_image_cells(const DynamicsMap& m, CellId cell, const LatentGrid& g,
                                     const RolloutSpec& spec, double delta,
                                     const TransitionOptions& opts = {});

TransitionGraph build_transition_graph(const DynamicsMap& m, const ValidCellSet& cells,
                                       const LatentGrid& g, const RolloutSpec& spec,
                                       double delta, const TransitionOptions& opts = {});

struct GraphStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t exit_cells = 0;
    std::size_t max_out_degree = 0;
    double escaped_fraction = 0.0;
};

GraphStats graph_stats(const TransitionGraph& f);

}  // namespace lmorse
