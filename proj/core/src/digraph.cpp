#include "lmorse/digraph.hpp"

#include <algorithm>

namespace lmorse {

Digraph Digraph::from_rows(std::vector<std::vector<NodeId>> rows) {
    Digraph g;
    for (auto& row : rows) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        g.push_row(row);
    }
    return g;
}

void Digraph::push_row(std::span<const NodeId> row) {
    targets_.insert(targets_.end(), row.begin(), row.end());
    offsets_.push_back(targets_.size());
}

bool Digraph::has_edge(NodeId from, NodeId to) const {
    const auto row = successors(from);
    return std::binary_search(row.begin(), row.end(), to);
}

Digraph Digraph::reversed() const {
    const std::size_t n = node_count();
    std::vector<std::size_t> counts(n + 1, 0);
    for (NodeId t : targets_) ++counts[t + 1];
    for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];
    Digraph r;
    r.offsets_ = counts;
    r.targets_.resize(targets_.size());
    std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
    // Sources are visited in increasing order, so every reversed row comes out sorted.
    for (NodeId v = 0; v < n; ++v) {
        for (NodeId t : successors(v)) r.targets_[fill[t]++] = v;
    }
    return r;
}

}  // namespace lmorse
