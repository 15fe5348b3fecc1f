#include "lmorse/morse.hpp"

#include "lmorse/error.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace lmorse {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void merge_into(std::vector<std::size_t>& dst, const std::vector<std::size_t>& src) {
    if (src.empty()) return;
    std::vector<std::size_t> merged;
    merged.reserve(dst.size() + src.size());
    std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(merged));
    dst.swap(merged);
}

}  // namespace

std::string to_string(AttractorLabel l) {
    switch (l) {
        case AttractorLabel::unlabeled: return "unlabeled";
        case AttractorLabel::success: return "success";
        case AttractorLabel::failure: return "failure";
    }
    return "?";
}

std::vector<std::size_t> MorseGraph::attractors() const {
    std::vector<std::size_t> out;
    for (const auto& n : nodes) {
        if (n.is_attractor) out.push_back(n.id);
    }
    return out;
}

std::size_t MorseGraph::edge_count() const {
    std::size_t e = 0;
    for (const auto& row : edges) e += row.size();
    return e;
}

MorseGraph build_morse_graph(const TransitionGraph& f) {
    const auto sccs = strongly_connected_components(f.edges);
    const auto recurrent = recurrent_components(f.edges, sccs);
    const std::size_t comps = sccs.components.size();

    // Tarjan emits sinks first; Morse ids run in the opposite (topological) order.
    std::vector<std::size_t> morse_of(comps, kNone);
    for (std::size_t i = 0; i < recurrent.size(); ++i) {
        morse_of[recurrent[i]] = recurrent.size() - 1 - i;
    }

    // first_recurrent[c]: Morse ids reachable from c through paths whose
    // intermediate components are all non-recurrent.
    std::vector<std::vector<std::size_t>> first_recurrent(comps);
    std::vector<std::size_t> succ_comps;
    for (std::size_t c = 0; c < comps; ++c) {
        succ_comps.clear();
        for (NodeId v : sccs.components[c]) {
            for (NodeId w : f.edges.successors(v)) {
                const std::size_t s = sccs.component_of[w];
                if (s != c) succ_comps.push_back(s);
            }
        }
        std::sort(succ_comps.begin(), succ_comps.end());
        succ_comps.erase(std::unique(succ_comps.begin(), succ_comps.end()), succ_comps.end());
        auto& acc = first_recurrent[c];
        for (std::size_t s : succ_comps) {
            if (morse_of[s] != kNone) {
                merge_into(acc, {morse_of[s]});
            } else {
                merge_into(acc, first_recurrent[s]);
            }
        }
    }

    MorseGraph mg;
    mg.nodes.resize(recurrent.size());
    mg.edges.resize(recurrent.size());
    for (std::size_t c : recurrent) {
        const std::size_t id = morse_of[c];
        auto& node = mg.nodes[id];
        node.id = id;
        for (NodeId v : sccs.components[c]) node.cells.push_back(f.cell(v));
        mg.edges[id] = first_recurrent[c];
        node.is_attractor = mg.edges[id].empty();
    }
    mg.topological_order.resize(mg.nodes.size());
    for (std::size_t i = 0; i < mg.nodes.size(); ++i) mg.topological_order[i] = i;
    return mg;
}

std::optional<std::vector<std::size_t>> topological_sort(const MorseGraph& mg) {
    const std::size_t n = mg.nodes.size();
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& row : mg.edges) {
        for (std::size_t t : row) {
            if (t >= n) return std::nullopt;
            ++indegree[t];
        }
    }
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        const std::size_t v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (std::size_t t : mg.edges[v]) {
            if (--indegree[t] == 0) ready.push_back(t);
        }
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

const RoaEntry* RoaAssignment::find(CellId id) const {
    const auto it = std::lower_bound(cells.begin(), cells.end(), id);
    if (it == cells.end() || *it != id) return nullptr;
    return &entries[static_cast<std::size_t>(it - cells.begin())];
}

std::size_t RoaAssignment::count(RoaKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [&](const RoaEntry& e) { return e.kind == kind; }));
}

RoaAssignment regions_of_attraction(const TransitionGraph& f, const MorseGraph& mg) {
    const std::size_t n = f.edges.node_count();
    const Digraph back = f.edges.reversed();

    std::vector<std::uint8_t> reached_count(n, 0);  // saturates at 2
    std::vector<std::size_t> first(n, kNone);
    std::vector<std::size_t> seen_by(n, kNone);
    std::vector<NodeId> queue;

    for (std::size_t a : mg.attractors()) {
        queue.clear();
        for (CellId c : mg.nodes[a].cells) {
            const auto pos = f.nodes.position(c);
            if (!pos) throw Error("Morse node cell is not part of the transition graph");
            seen_by[*pos] = a;
            queue.push_back(*pos);
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId v = queue[head];
            if (reached_count[v] < 2) ++reached_count[v];
            if (first[v] == kNone) first[v] = a;
            for (NodeId u : back.successors(v)) {
                if (seen_by[u] != a) {
                    seen_by[u] = a;
                    queue.push_back(u);
                }
            }
        }
    }

    RoaAssignment roa;
    roa.cells = f.nodes.cells;
    roa.entries.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        if (reached_count[v] == 0) {
            roa.entries[v] = {RoaKind::unreachable, 0};
        } else if (reached_count[v] == 1) {
            roa.entries[v] = {RoaKind::attractor, first[v]};
        } else {
            roa.entries[v] = {RoaKind::ambiguous, 0};
        }
    }
    return roa;
}

void check_structure(const TransitionGraph& f, const MorseGraph& mg, const RoaAssignment& roa) {
    if (!topological_sort(mg)) throw Error("Morse graph is not acyclic");
    std::vector<bool> owned(f.nodes.size(), false);
    for (const auto& node : mg.nodes) {
        if (node.is_attractor != mg.edges[node.id].empty()) {
            throw Error("Morse node " + std::to_string(node.id) + " has an inconsistent attractor flag");
        }
        for (CellId c : node.cells) {
            const auto pos = f.nodes.position(c);
            if (!pos) throw Error("Morse node " + std::to_string(node.id) + " holds a cell outside C");
            if (owned[*pos]) throw Error("cell " + std::to_string(c) + " belongs to two Morse nodes");
            owned[*pos] = true;
        }
    }
    if (roa.cells != f.nodes.cells || roa.entries.size() != roa.cells.size()) {
        throw Error("ROA assignment does not cover the valid cells exactly");
    }
    for (std::size_t a : mg.attractors()) {
        for (CellId c : mg.nodes[a].cells) {
            const RoaEntry* e = roa.find(c);
            if (e == nullptr || e->kind != RoaKind::attractor || e->attractor != a) {
                throw Error("attractor " + std::to_string(a) + " cell " + std::to_string(c) +
                            " is not assigned to its own attractor");
            }
        }
    }
}

}  // namespace lmorse
