#include "csreach/indexing_graph.hpp"

#include <algorithm>
#include <tuple>

namespace csreach {

IndexingGraphView::IndexingGraphView(const ProgramValidGraph& g, const SummaryEdgeSet& summaries)
    : vertex_count_(g.vertex_count()) {
    // Collect same-side entries per side, then freeze into CSR in the
    // deterministic (source, target, kind, site) order.
    std::vector<std::pair<VertexId, Entry>> rows[2];
    auto put = [&](Side side, VertexId src, VertexId dst, IndexEdgeKind kind, std::uint32_t aux) {
        rows[static_cast<int>(side)].push_back({src, Entry{dst, kind, aux}});
    };

    for (const Edge& e : g.edges()) {
        switch (e.label.kind) {
        case LabelKind::Eps:
            put(Side::One, e.src, e.dst, IndexEdgeKind::Eps, 0);
            put(Side::Two, e.src, e.dst, IndexEdgeKind::Eps, 0);
            break;
        case LabelKind::Open:
            put(Side::Two, e.src, e.dst, IndexEdgeKind::Open, e.label.site);
            break;
        case LabelKind::Close:
            put(Side::One, e.src, e.dst, IndexEdgeKind::Close, e.label.site);
            break;
        }
    }
    const auto& summary_edges = summaries.edges();
    for (std::uint32_t i = 0; i < summary_edges.size(); ++i) {
        put(Side::One, summary_edges[i].source, summary_edges[i].target, IndexEdgeKind::Summary, i);
        put(Side::Two, summary_edges[i].source, summary_edges[i].target, IndexEdgeKind::Summary, i);
    }

    for (int side = 0; side < 2; ++side) {
        auto& side_rows = rows[side];
        std::sort(side_rows.begin(), side_rows.end(), [](const auto& a, const auto& b) {
            return std::make_tuple(a.first, a.second.to, a.second.kind, a.second.aux) <
                   std::make_tuple(b.first, b.second.to, b.second.kind, b.second.aux);
        });
        SideAdjacency& adj = side_adj_[side];
        adj.begin.assign(vertex_count_ + 1, 0);
        for (const auto& row : side_rows) ++adj.begin[row.first + 1];
        for (std::uint32_t v = 0; v < vertex_count_; ++v) adj.begin[v + 1] += adj.begin[v];
        adj.entries.reserve(side_rows.size());
        for (const auto& row : side_rows) adj.entries.push_back(row.second);
        side_pred_[side] = transpose(adj, vertex_count_);
    }
}

IndexingGraphView::SideAdjacency IndexingGraphView::transpose(const SideAdjacency& adj,
                                                              std::uint32_t vertex_count) {
    std::vector<std::pair<VertexId, Entry>> rows;
    rows.reserve(adj.entries.size());
    for (VertexId src = 0; src < vertex_count; ++src)
        for (std::uint32_t i = adj.begin[src]; i < adj.begin[src + 1]; ++i)
            rows.push_back({adj.entries[i].to, Entry{src, adj.entries[i].kind, adj.entries[i].aux}});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::make_tuple(a.first, a.second.to, a.second.kind, a.second.aux) <
               std::make_tuple(b.first, b.second.to, b.second.kind, b.second.aux);
    });
    SideAdjacency out;
    out.begin.assign(vertex_count + 1, 0);
    for (const auto& row : rows) ++out.begin[row.first + 1];
    for (std::uint32_t v = 0; v < vertex_count; ++v) out.begin[v + 1] += out.begin[v];
    out.entries.reserve(rows.size());
    for (const auto& row : rows) out.entries.push_back(row.second);
    return out;
}

IndexingGraphStats IndexingGraphView::stats() const {
    IndexingGraphStats s;
    s.vertex_count = static_cast<std::uint64_t>(vertex_count_) * 2;
    s.edge_count = static_cast<std::uint64_t>(side_adj_[0].entries.size()) +
                   side_adj_[1].entries.size() + vertex_count_; // + bridges
    return s;
}

std::vector<IndexEdge> IndexingGraphView::successors(IndexVertex iv) const {
    std::vector<IndexEdge> out;
    for_each_successor(iv, [&](const IndexEdge& e) { out.push_back(e); });
    return out;
}

std::vector<IndexEdge> IndexingGraphView::predecessors(IndexVertex iv) const {
    std::vector<IndexEdge> out;
    for_each_predecessor(iv, [&](const IndexEdge& e) { out.push_back(e); });
    return out;
}

} // namespace csreach
