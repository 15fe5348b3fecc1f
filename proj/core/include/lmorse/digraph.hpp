#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lmorse {

using NodeId = std::uint32_t;

/// Compressed adjacency over nodes 0..n-1. Successor rows are sorted.
class Digraph {
public:
    Digraph() : offsets_{0} {}

    /// Rows are sorted and deduplicated on construction.
    static Digraph from_rows(std::vector<std::vector<NodeId>> rows);

    std::size_t node_count() const { return offsets_.size() - 1; }
    std::size_t edge_count() const { return targets_.size(); }

    std::span<const NodeId> successors(NodeId v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    bool has_edge(NodeId from, NodeId to) const;

    Digraph reversed() const;

    /// Appends a node whose row must already be sorted and unique.
    void push_row(std::span<const NodeId> row);

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
};

}  // namespace lmorse
