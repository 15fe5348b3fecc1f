#pragma once

// Independent reference implementations used to check the library.

#include "lmorse/dataset.hpp"
#include "lmorse/digraph.hpp"
#include "lmorse/dynamics.hpp"
#include "lmorse/geometry.hpp"
#include "lmorse/morse.hpp"
#include "lmorse/transition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace lmorse::oracle {

inline Digraph random_digraph(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<std::vector<NodeId>> rows(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (coin(rng)) rows[u].push_back(static_cast<NodeId>(v));
        }
    }
    return Digraph::from_rows(std::move(rows));
}

/// Reflexive-transitive closure by repeated boolean squaring (Warshall).
inline std::vector<std::vector<bool>> reachability(const Digraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t u = 0; u < n; ++u) {
        r[u][u] = true;
        for (NodeId v : g.successors(static_cast<NodeId>(u))) r[u][v] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!r[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (r[k][j]) r[i][j] = true;
            }
        }
    }
    return r;
}

/// SCC partition as a sorted set of sorted node lists.
inline std::set<std::vector<NodeId>> closure_partition(const Digraph& g) {
    const auto r = reachability(g);
    std::set<std::vector<NodeId>> out;
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        std::vector<NodeId> comp;
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            if (r[u][v] && r[v][u]) comp.push_back(static_cast<NodeId>(v));
        }
        out.insert(comp);
    }
    return out;
}

inline std::set<std::vector<NodeId>> as_partition(const SccDecomposition& d) {
    std::set<std::vector<NodeId>> out;
    for (auto comp : d.components) {
        std::sort(comp.begin(), comp.end());
        out.insert(comp);
    }
    return out;
}

/// One trajectory through every cell center, so C is the whole grid.
inline TrajectoryDataset covering_dataset(const LatentGrid& g) {
    TrajectoryDataset d;
    d.dim = g.dim();
    Trajectory t{"cover", 1, {}};
    for (CellId id = 0; id < g.cell_count(); ++id) t.points.push_back(cell_center(g.index_of(id), g));
    if (t.points.size() == 1) t.points.push_back(t.points.front());
    d.trajectories.push_back(std::move(t));
    return d;
}

inline LatentPoint uniform_in_box(const CellBox& box, std::mt19937_64& rng) {
    std::vector<double> p(box.lo.dim());
    for (std::size_t a = 0; a < p.size(); ++a) {
        std::uniform_real_distribution<double> u(box.lo[a], box.hi[a]);
        p[a] = u(rng);
    }
    return LatentPoint(std::move(p));
}

/// Samples per cell whose r-step image cell is not among the cell's
/// unrestricted successors.
inline std::size_t soundness_violations(const DynamicsMap& m, const LatentGrid& g,
                                        const RolloutSpec& spec, double delta,
                                        std::size_t samples_per_cell, std::uint64_t seed) {
    std::size_t violations = 0;
    std::mt19937_64 rng(seed);
    for (CellId id = 0; id < g.cell_count(); ++id) {
        const auto succ = cell_image_cells(m, id, g, spec, delta);
        const auto box = cell_box(g.index_of(id), g);
        for (std::size_t s = 0; s < samples_per_cell; ++s) {
            const auto image = rollout(m, uniform_in_box(box, rng), spec);
            const CellId target = point_to_cell_id(image.coords(), g);
            if (!std::binary_search(succ.begin(), succ.end(), target)) ++violations;
        }
    }
    return violations;
}

inline double distance_to_box(const LatentPoint& p, const CellBox& b) {
    double s = 0.0;
    for (std::size_t a = 0; a < p.dim(); ++a) {
        const double d = std::max({b.lo[a] - p[a], 0.0, p[a] - b.hi[a]});
        s += d * d;
    }
    return std::sqrt(s);
}

inline double distance_to_node(const LatentPoint& p, const MorseNode& node, const LatentGrid& g) {
    double best = INFINITY;
    for (CellId c : node.cells) best = std::min(best, distance_to_box(p, cell_box(g.index_of(c), g)));
    return best;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("lmorse-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace lmorse::oracle
