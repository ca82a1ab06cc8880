// csreach: end-to-end query sessions and witness paths.
//
// A session owns the full pipeline for one graph: summaries, indexing-graph
// view, condensation, and one reachability scheme. cs_query(u, v) answers
// whether v is context-sensitively reachable from u by testing whether
// (v, Two) is reachable from (u, One); cs_query_path additionally produces a
// concrete path in the original graph whose label string derives S, found by
// a DFS over the view pruned with the scheme's negative filter and mapped
// back through summary expansion.
//
// Sessions are immutable after construction; concurrent queries from
// multiple threads are safe (per-call scratch state only).
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "csreach/condense.hpp"
#include "csreach/graph.hpp"
#include "csreach/indexing_graph.hpp"
#include "csreach/scheme.hpp"
#include "csreach/summary.hpp"

namespace csreach {

struct WitnessPath {
    std::vector<VertexId> vertices;  // n+1 vertices
    std::vector<Label> labels;       // n labels; the string derives S
};

class QuerySession {
public:
    // Builds the whole pipeline and a fresh index of the given scheme.
    QuerySession(ProgramValidGraph graph, SchemeKind scheme,
                 const BuildLimits& limits = {}, const GrailParams& grail = {});
    // Builds the pipeline around an already-loaded index (e.g. from disk).
    QuerySession(ProgramValidGraph graph, ReachScheme scheme);

    bool cs_query(VertexId u, VertexId v) const;

    // Witness path for reachable pairs, std::nullopt otherwise. Throws
    // CapabilityError when the scheme cannot return paths.
    std::optional<WitnessPath> cs_query_path(VertexId u, VertexId v) const;

    // Expands a summary edge into the concrete matched path
    // source -open-> entry -...-> exit -close-> target it summarizes.
    WitnessPath expand_summary(const SummaryEdge& edge) const;

    const ProgramValidGraph& graph() const { return graph_; }
    const SummaryEdgeSet& summaries() const { return summaries_; }
    const IndexingGraphView& view() const { return *view_; }
    const Condensation& condensation() const { return *condensation_; }
    const ReachScheme& scheme() const { return *scheme_; }

private:
    void append_summary_path(VertexId source, VertexId target,
                             WitnessPath& out, std::uint32_t depth) const;

    ProgramValidGraph graph_;
    SummaryEdgeSet summaries_;
    std::unique_ptr<IndexingGraphView> view_;
    std::unique_ptr<Condensation> condensation_;
    std::unique_ptr<ReachScheme> scheme_;
};

} // namespace csreach
