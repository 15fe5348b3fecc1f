#pragma once

#include "lmorse/digraph.hpp"
#include "lmorse/geometry.hpp"
#include "lmorse/transition.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lmorse {

/// Partition of a digraph into maximal strongly connected components.
/// Components are listed in reverse topological order of the condensation
/// (every edge between components points from a later to an earlier entry),
/// each with its nodes sorted.
struct SccDecomposition {
    std::vector<std::vector<NodeId>> components;
    std::vector<std::uint32_t> component_of;
};

/// Iterative Tarjan; linear in nodes + edges, no recursion.
SccDecomposition strongly_connected_components(const Digraph& g);

/// Indices into sccs.components of the recurrent components: two or more
/// nodes, or a single node with a self-edge.
std::vector<std::size_t> recurrent_components(const Digraph& g, const SccDecomposition& sccs);

enum class AttractorLabel { unlabeled, success, failure };

std::string to_string(AttractorLabel l);

struct MorseNode {
    std::size_t id = 0;
    std::vector<CellId> cells;  // sorted
    bool is_attractor = false;
    AttractorLabel label = AttractorLabel::unlabeled;
};

/// Condensation DAG over the recurrent components of F. Node ids are assigned
/// in a topological order, so every edge goes from a lower to a higher id.
struct MorseGraph {
    std::vector<MorseNode> nodes;
    std::vector<std::vector<std::size_t>> edges;  // sorted successor ids
    std::vector<std::size_t> topological_order;

    std::vector<std::size_t> attractors() const;
    std::size_t edge_count() const;
};

MorseGraph build_morse_graph(const TransitionGraph& f);

/// Kahn's algorithm over the Morse edges; empty if a cycle exists.
std::optional<std::vector<std::size_t>> topological_sort(const MorseGraph& mg);

enum class RoaKind { attractor, ambiguous, unreachable };

struct RoaEntry {
    RoaKind kind = RoaKind::unreachable;
    std::size_t attractor = 0;  // Morse node id; meaningful for RoaKind::attractor

    friend bool operator==(const RoaEntry&, const RoaEntry&) = default;
};

/// One entry per valid cell, aligned with TransitionGraph::nodes.
struct RoaAssignment {
    std::vector<CellId> cells;
    std::vector<RoaEntry> entries;

    /// nullptr when the cell is not in C.
    const RoaEntry* find(CellId id) const;
    std::size_t count(RoaKind kind) const;
};

/// Backward reachability from each attractor in F. A cell reaching exactly one
/// attractor is assigned to it; two or more makes it ambiguous; none makes it
/// unreachable.
RoaAssignment regions_of_attraction(const TransitionGraph& f, const MorseGraph& mg);

/// Throws Error if the Morse graph is cyclic, Morse cell sets overlap or leave
/// C, the ROA does not cover C exactly, or an attractor cell is not assigned to
/// its own attractor.
void check_structure(const TransitionGraph& f, const MorseGraph& mg, const RoaAssignment& roa);

}  // namespace lmorse
