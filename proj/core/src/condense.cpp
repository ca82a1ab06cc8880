#include "csreach/condense.hpp"

#include <algorithm>

#include "csreach/errors.hpp"

namespace csreach {

namespace {

void freeze_dag_edges(ComponentId component_count,
                      std::vector<std::pair<ComponentId, ComponentId>>& edges,
                      std::vector<std::uint32_t>& succ_begin, std::vector<ComponentId>& succ) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    succ_begin.assign(component_count + 1, 0);
    for (const auto& [src, dst] : edges) ++succ_begin[src + 1];
    for (ComponentId c = 0; c < component_count; ++c) succ_begin[c + 1] += succ_begin[c];
    succ.clear();
    succ.reserve(edges.size());
    for (const auto& [src, dst] : edges) succ.push_back(dst);
}

} // namespace

CondensedDag::CondensedDag(ComponentId component_count,
                           std::vector<std::pair<ComponentId, ComponentId>> edges)
    : component_count_(component_count) {
    for (const auto& [src, dst] : edges) {
        if (src >= component_count_ || dst >= component_count_)
            throw StructureError("dag edge (" + std::to_string(src) + ", " + std::to_string(dst) +
                                 ") out of range");
        if (src <= dst)
            throw StructureError("dag edge (" + std::to_string(src) + ", " + std::to_string(dst) +
                                 ") violates the reverse-topological numbering (src > dst)");
    }
    freeze_dag_edges(component_count_, edges, succ_begin_, succ_);
}

Condensation::Condensation(const IndexingGraphView& view) {
    const std::uint32_t n = view.index_vertex_count();

    // Flatten the logical indexing graph into one encoded CSR so the DFS can
    // hold plain edge cursors.
    std::vector<std::uint32_t> begin(n + 1, 0);
    std::vector<std::uint32_t> targets;
    for (std::uint32_t code = 0; code < n; ++code) {
        view.for_each_successor(IndexVertex::decode(code),
                                [&](const IndexEdge& e) { targets.push_back(e.to.encode()); });
        begin[code + 1] = static_cast<std::uint32_t>(targets.size());
    }

    // Tarjan with an explicit call stack; components are numbered in
    // completion order, which is reverse topological.
    constexpr std::uint32_t kUnvisited = 0xffffffffu;
    std::vector<std::uint32_t> order(n, kUnvisited);
    std::vector<std::uint32_t> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    component_of_.assign(n, kUnvisited);

    std::vector<std::uint32_t> scc_stack;
    struct Frame {
        std::uint32_t v;
        std::uint32_t edge;
    };
    std::vector<Frame> call;
    std::uint32_t next_order = 0;
    ComponentId next_component = 0;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (order[root] != kUnvisited) continue;
        order[root] = lowlink[root] = next_order++;
        scc_stack.push_back(root);
        on_stack[root] = true;
        call.push_back({root, begin[root]});

        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < begin[f.v + 1]) {
                const std::uint32_t w = targets[f.edge++];
                if (order[w] == kUnvisited) {
                    order[w] = lowlink[w] = next_order++;
                    scc_stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, begin[w]}); // invalidates f
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], order[w]);
                }
            } else {
                const std::uint32_t v = f.v;
                call.pop_back();
                if (!call.empty())
                    lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
                if (lowlink[v] == order[v]) {
                    while (true) {
                        const std::uint32_t w = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[w] = false;
                        component_of_[w] = next_component;
                        if (w == v) break;
                    }
                    ++next_component;
                }
            }
        }
    }

    std::vector<std::pair<ComponentId, ComponentId>> dag_edges;
    for (std::uint32_t v = 0; v < n; ++v) {
        for (std::uint32_t i = begin[v]; i < begin[v + 1]; ++i) {
            const ComponentId a = component_of_[v];
            const ComponentId b = component_of_[targets[i]];
            if (a != b) dag_edges.emplace_back(a, b);
        }
    }
    dag_.component_count_ = next_component;
    freeze_dag_edges(next_component, dag_edges, dag_.succ_begin_, dag_.succ_);
}

} // namespace csreach
