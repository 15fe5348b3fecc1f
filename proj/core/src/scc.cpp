#include "lmorse/morse.hpp"

#include <algorithm>
#include <limits>

namespace lmorse {

SccDecomposition strongly_connected_components(const Digraph& g) {
    constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
    const std::size_t n = g.node_count();

    SccDecomposition out;
    out.component_of.assign(n, kUnvisited);

    std::vector<std::uint32_t> index(n, kUnvisited);
    std::vector<std::uint32_t> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;

    struct Frame {
        NodeId node;
        std::size_t next_edge;
    };
    std::vector<Frame> call;
    std::uint32_t counter = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& frame = call.back();
            const NodeId v = frame.node;
            const auto succ = g.successors(v);
            if (frame.next_edge < succ.size()) {
                const NodeId w = succ[frame.next_edge++];
                if (index[w] == kUnvisited) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});  // invalidates `frame`
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
                continue;
            }
            if (lowlink[v] == index[v]) {
                std::vector<NodeId> comp;
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.component_of[w] = static_cast<std::uint32_t>(out.components.size());
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.components.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) {
                const NodeId parent = call.back().node;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    return out;
}

std::vector<std::size_t> recurrent_components(const Digraph& g, const SccDecomposition& sccs) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < sccs.components.size(); ++c) {
        const auto& comp = sccs.components[c];
        if (comp.size() >= 2 || g.has_edge(comp.front(), comp.front())) out.push_back(c);
    }
    return out;
}

}  // namespace lmorse
