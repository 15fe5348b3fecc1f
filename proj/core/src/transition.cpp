#include "lmorse/transition.hpp"

#include "lmorse/error.hpp"
#include "lmorse/parallel.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace lmorse {

namespace {

constexpr std::size_t kCellsPerChunk = 256;

void sort_unique(std::vector<CellId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Rolls `z` forward, clamps it, and appends every cell its delta-ball touches.
void push_image(const DynamicsMap& m, std::vector<double>& z, const LatentGrid& g,
                const RolloutSpec& spec, double delta, std::vector<double>& scratch,
                std::vector<CellId>& out) {
    rollout_inplace(m, z, spec.steps, scratch);
    for (double& v : z) v = std::clamp(v, -1.0, 1.0);
    append_ball_cells(z, delta, g, out);
}

}  // namespace

std::optional<NodeId> ValidCellSet::position(CellId id) const {
    const auto it = std::lower_bound(cells.begin(), cells.end(), id);
    if (it == cells.end() || *it != id) return std::nullopt;
    return static_cast<NodeId>(it - cells.begin());
}

std::size_t ValidCellSet::data_cell_count() const {
    return static_cast<std::size_t>(std::count(origin.begin(), origin.end(), CellOrigin::data));
}

ValidCellSet valid_cells(const TrajectoryDataset& dataset, const LatentGrid& g) {
    if (dataset.trajectories.empty() || dataset.point_count() == 0) {
        throw Error("cannot build valid cells from an empty dataset");
    }
    if (dataset.dim != g.dim()) {
        throw Error("dataset dim " + std::to_string(dataset.dim) + " does not match grid dim " +
                    std::to_string(g.dim()));
    }
    std::vector<CellId> data;
    data.reserve(dataset.point_count());
    for (const auto& t : dataset.trajectories) {
        for (const auto& p : t.points) data.push_back(point_to_cell_id(p.coords(), g));
    }
    sort_unique(data);

    std::vector<CellId> all = data;
    for (CellId c : data) {
        const auto nb = neighbor_ids(c, g);
        all.insert(all.end(), nb.begin(), nb.end());
    }
    sort_unique(all);

    ValidCellSet out;
    out.cells = std::move(all);
    out.origin.reserve(out.cells.size());
    for (CellId c : out.cells) {
        out.origin.push_back(std::binary_search(data.begin(), data.end(), c) ? CellOrigin::data
                                                                             : CellOrigin::neighbor);
    }
    if (out.cells.size() > std::numeric_limits<NodeId>::max()) {
        throw Error("too many valid cells for 32-bit node ids");
    }
    return out;
}

std::vector<CellId> cell_image_cells(const DynamicsMap& m, CellId cell, const LatentGrid& g,
                                     const RolloutSpec& spec, double delta,
                                     const TransitionOptions& opts) {
    if (!(delta >= 0.0)) throw Error("delta must be non-negative");
    if (m.dim() != g.dim()) {
        throw Error("dynamics dim " + std::to_string(m.dim()) + " does not match grid dim " +
                    std::to_string(g.dim()));
    }
    const std::size_t d = g.dim();
    const auto idx = g.index_of(cell);
    std::vector<double> lo(d), hi(d), z(d), scratch;
    for (std::size_t a = 0; a < d; ++a) {
        lo[a] = g.lower_edge(a, idx.idx[a]);
        hi[a] = g.lower_edge(a, idx.idx[a] + 1);
    }
    std::vector<CellId> out;
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t k = 0; k < corners; ++k) {
        for (std::size_t a = 0; a < d; ++a) z[a] = ((k >> (d - 1 - a)) & 1U) ? hi[a] : lo[a];
        push_image(m, z, g, spec, delta, scratch, out);
    }
    if (opts.extra_samples_per_cell > 0) {
        SeededRng rng(opts.seed, cell);
        for (std::size_t s = 0; s < opts.extra_samples_per_cell; ++s) {
            for (std::size_t a = 0; a < d; ++a) z[a] = rng.uniform(lo[a], hi[a]);
            push_image(m, z, g, spec, delta, scratch, out);
        }
    }
    sort_unique(out);
    return out;
}

TransitionGraph build_transition_graph(const DynamicsMap& m, const ValidCellSet& cells,
                                       const LatentGrid& g, const RolloutSpec& spec,
                                       double delta, const TransitionOptions& opts) {
    if (!(delta >= 0.0)) throw Error("delta must be non-negative");
    if (m.dim() != g.dim()) {
        throw Error("dynamics dim " + std::to_string(m.dim()) + " does not match grid dim " +
                    std::to_string(g.dim()));
    }
    const std::size_t n = cells.size();
    const std::size_t chunks = (n + kCellsPerChunk - 1) / kCellsPerChunk;

    struct ChunkRows {
        std::vector<std::vector<NodeId>> rows;
        std::uint64_t escaped = 0;
        std::uint64_t total = 0;
    };
    std::vector<ChunkRows> parts(chunks);

    parallel_for_chunks(chunks, opts.workers, [&](std::size_t chunk) {
        auto& part = parts[chunk];
        const std::size_t begin = chunk * kCellsPerChunk;
        const std::size_t end = std::min(n, begin + kCellsPerChunk);
        part.rows.resize(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            const auto targets = cell_image_cells(m, cells.cells[i], g, spec, delta, opts);
            auto& row = part.rows[i - begin];
            for (CellId t : targets) {
                if (auto pos = cells.position(t)) {
                    row.push_back(*pos);
                } else {
                    ++part.escaped;
                }
            }
            part.total += targets.size();
        }
    });

    TransitionGraph f{g, cells, Digraph{}, BuildInfo{}};
    f.info.rollout_steps = spec.steps;
    f.info.delta = delta;
    f.info.extra_samples_per_cell = opts.extra_samples_per_cell;
    for (auto& part : parts) {
        // Targets arrive sorted by flat id, and node positions preserve that order.
        for (const auto& row : part.rows) f.edges.push_row(row);
        f.info.escaped_targets += part.escaped;
        f.info.total_targets += part.total;
    }
    return f;
}

GraphStats graph_stats(const TransitionGraph& f) {
    GraphStats s;
    s.nodes = f.edges.node_count();
    s.edges = f.edges.edge_count();
    for (NodeId v = 0; v < s.nodes; ++v) {
        const auto deg = f.edges.successors(v).size();
        if (deg == 0) ++s.exit_cells;
        s.max_out_degree = std::max(s.max_out_degree, deg);
    }
    s.escaped_fraction = f.info.total_targets == 0
                             ? 0.0
                             : static_cast<double>(f.info.escaped_targets) /
                                   static_cast<double>(f.info.total_targets);
    return s;
}

}  // namespace lmorse
