// csreach: summary edges over matched call/return segments.
//
// A summary edge (source, target) records that some path
//   source -open(i)-> entry -...-> exit -close(i)-> target
// exists whose inner label string is matched (in L(M)). Summaries let
// traversals skip the called function body entirely; the matched inner
// structure can be recovered on demand for witness paths from the recorded
// same-level predecessor links.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csreach/graph.hpp"

namespace csreach {

struct SummaryEdge {
    VertexId source = 0; // call-side origin (tail of the open edge)
    VertexId target = 0; // return-side destination (head of the close edge)
    CallSiteId site = 0; // matched site
    VertexId entry = 0;  // head of the open edge
    VertexId exit = 0;   // tail of the close edge

    friend bool operator==(const SummaryEdge& a, const SummaryEdge& b) {
        return a.source == b.source && a.target == b.target && a.site == b.site &&
               a.entry == b.entry && a.exit == b.exit;
    }
};

// One step of a recorded same-level path: how `to` was reached from `from`.
struct SameLevelStep {
    enum class Kind : std::uint8_t { Eps, Summary };
    Kind kind = Kind::Eps;
    VertexId from = 0;
    VertexId to = 0;
};

class SummaryEdgeSet {
public:
    SummaryEdgeSet() = default;

    // Edges sorted by (source, target); at most one edge per (source, target).
    const std::vector<SummaryEdge>& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }

    // Summary successors of v (targets of summary edges out of v), ascending.
    std::span<const VertexId> successors(VertexId v) const;

    // The summary edge for (source, target), if present.
    std::optional<SummaryEdge> find(VertexId source, VertexId target) const;

    // True iff exit is same-level reachable from entry (a path whose label
    // string is in L(M)); defined for entries seeded by the computation, i.e.
    // heads of open edges.
    bool same_level(VertexId entry, VertexId exit) const;

    // The recorded same-level path entry ->* exit as a step sequence
    // (empty when entry == exit). Each step is an eps edge or a summary edge
    // of this set. Precondition: same_level(entry, exit).
    std::vector<SameLevelStep> same_level_path(VertexId entry, VertexId exit) const;

private:
    friend SummaryEdgeSet compute_summaries(const ProgramValidGraph& g);

    struct WitnessLink {
        VertexId prev;
        SameLevelStep::Kind kind;
        bool seed;
    };

    std::vector<SummaryEdge> edges_;                 // sorted by (source, target)
    std::vector<std::uint32_t> succ_begin_;          // CSR over edges_ by source
    std::vector<VertexId> succ_;                     // summary targets per source
    std::uint32_t vertex_count_ = 0;
    // Same-level relation per seeded entry, with first-discovery predecessor
    // links for witness reconstruction.
    std::vector<std::int32_t> entry_index_;          // vertex -> dense entry id or -1
    std::vector<VertexId> entry_vertex_;             // dense entry id -> vertex
    std::vector<std::vector<std::pair<VertexId, WitnessLink>>> witness_; // per entry, sorted by vertex
};

// Computes the complete summary-edge set of g with a same-level worklist:
// seed (e, e) for every open-edge head e, propagate across eps and summary
// edges, and emit a summary whenever a matched open/close pair brackets a
// same-level pair; new summaries re-enter propagation until fixpoint.
SummaryEdgeSet compute_summaries(const ProgramValidGraph& g);

} // namespace csreach
