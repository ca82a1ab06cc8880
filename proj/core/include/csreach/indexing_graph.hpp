// csreach: the two-copy indexing graph, iterated logically.
//
// Context-sensitive reachability reduces to plain reachability on a graph of
// two logical copies of V: side One carries eps, close, and summary edges
// (the prefix of a valid path that may still cross unmatched returns), side
// Two carries eps, open, and summary edges (the suffix of unmatched calls),
// and every vertex v has a bridge edge from (v, One) to (v, Two). Then u
// context-sensitively reaches v iff (v, Two) is reachable from (u, One).
//
// No doubled graph is materialized: the view precomputes side-filtered
// adjacency over the original vertex set and yields bridge edges on the fly,
// bridge first in side-One successor order.
#pragma once

#include <cstdint>
#include <vector>

#include "csreach/graph.hpp"
#include "csreach/summary.hpp"

namespace csreach {

enum class Side : std::uint8_t { One = 0, Two = 1 };

struct IndexVertex {
    VertexId vertex = 0;
    Side side = Side::One;

    // Dense encoding 2*vertex + side: ascending order enumerates vertices
    // ascending, side One before Two.
    std::uint32_t encode() const {
        return vertex * 2 + static_cast<std::uint32_t>(side);
    }
    static IndexVertex decode(std::uint32_t code) {
        return IndexVertex{code / 2, static_cast<Side>(code % 2)};
    }

    friend bool operator==(const IndexVertex& a, const IndexVertex& b) {
        return a.vertex == b.vertex && a.side == b.side;
    }
};

enum class IndexEdgeKind : std::uint8_t { Bridge, Eps, Open, Close, Summary };

struct IndexEdge {
    IndexVertex to;
    IndexEdgeKind kind = IndexEdgeKind::Bridge;
    // site id for Open/Close, index into SummaryEdgeSet::edges() for Summary,
    // 0 otherwise.
    std::uint32_t aux = 0;
};

struct IndexingGraphStats {
    std::uint64_t vertex_count = 0; // 2|V|
    std::uint64_t edge_count = 0;   // 2|E_eps| + |E_open| + |E_close| + 2|E_s| + |V|
};

class IndexingGraphView {
public:
    IndexingGraphView(const ProgramValidGraph& g, const SummaryEdgeSet& summaries);

    std::uint32_t graph_vertex_count() const { return vertex_count_; }
    std::uint32_t index_vertex_count() const { return vertex_count_ * 2; }

    IndexingGraphStats stats() const;

    // Successors of iv in deterministic order. Side One yields the bridge
    // edge first, then eps/close/summary edges by (target, kind, site); side
    // Two yields eps/open/summary edges in the same order.
    template <typename F>
    void for_each_successor(IndexVertex iv, F&& fn) const {
        const SideAdjacency& adj = side_adj_[static_cast<int>(iv.side)];
        if (iv.side == Side::One) {
            fn(IndexEdge{IndexVertex{iv.vertex, Side::Two}, IndexEdgeKind::Bridge, 0});
        }
        for (std::uint32_t i = adj.begin[iv.vertex]; i < adj.begin[iv.vertex + 1]; ++i) {
            const Entry& e = adj.entries[i];
            fn(IndexEdge{IndexVertex{e.to, iv.side}, e.kind, e.aux});
        }
    }

    // Predecessors of iv: the exact transpose of for_each_successor,
    // same-side entries by (source, kind, site); on side Two the bridge
    // predecessor (v, One) is yielded first.
    template <typename F>
    void for_each_predecessor(IndexVertex iv, F&& fn) const {
        const SideAdjacency& adj = side_pred_[static_cast<int>(iv.side)];
        if (iv.side == Side::Two) {
            fn(IndexEdge{IndexVertex{iv.vertex, Side::One}, IndexEdgeKind::Bridge, 0});
        }
        for (std::uint32_t i = adj.begin[iv.vertex]; i < adj.begin[iv.vertex + 1]; ++i) {
            const Entry& e = adj.entries[i];
            fn(IndexEdge{IndexVertex{e.to, iv.side}, e.kind, e.aux});
        }
    }

    // Materialized copies, mainly for tests and the DOT export.
    std::vector<IndexEdge> successors(IndexVertex iv) const;
    std::vector<IndexEdge> predecessors(IndexVertex iv) const;

private:
    struct Entry {
        VertexId to; // stays on the same side
        IndexEdgeKind kind;
        std::uint32_t aux;
    };
    struct SideAdjacency {
        std::vector<std::uint32_t> begin; // CSR offsets, size V+1
        std::vector<Entry> entries;
    };

    static SideAdjacency transpose(const SideAdjacency& adj, std::uint32_t vertex_count);

    std::uint32_t vertex_count_;
    SideAdjacency side_adj_[2];  // successors within side One / side Two
    SideAdjacency side_pred_[2]; // transposed
};

} // namespace csreach
