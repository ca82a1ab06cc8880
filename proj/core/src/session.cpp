#include "csreach/session.hpp"

#include <algorithm>

#include "csreach/errors.hpp"

namespace csreach {

QuerySession::QuerySession(ProgramValidGraph graph, SchemeKind scheme, const BuildLimits& limits,
                           const GrailParams& grail)
    : graph_(std::move(graph)),
      summaries_(compute_summaries(graph_)),
      view_(std::make_unique<IndexingGraphView>(graph_, summaries_)),
      condensation_(std::make_unique<Condensation>(*view_)),
      scheme_(std::make_unique<ReachScheme>(
          ReachScheme::build(scheme, condensation_->dag(), limits, grail))) {}

QuerySession::QuerySession(ProgramValidGraph graph, ReachScheme scheme)
    : graph_(std::move(graph)),
      summaries_(compute_summaries(graph_)),
      view_(std::make_unique<IndexingGraphView>(graph_, summaries_)),
      condensation_(std::make_unique<Condensation>(*view_)),
      scheme_(std::make_unique<ReachScheme>(std::move(scheme))) {
    if (scheme_->component_count() != condensation_->dag().component_count())
        throw SerializationError("index does not match this graph's condensation");
}

namespace {

void check_vertex(const ProgramValidGraph& g, VertexId v, const char* which) {
    if (v >= g.vertex_count())
        throw ParamError(std::string(which) + " vertex " + std::to_string(v) +
                         " out of range (graph has " + std::to_string(g.vertex_count()) + ")");
}

} // namespace

bool QuerySession::cs_query(VertexId u, VertexId v) const {
    check_vertex(graph_, u, "source");
    check_vertex(graph_, v, "target");
    const ComponentId cu = condensation_->component_of({u, Side::One});
    const ComponentId cv = condensation_->component_of({v, Side::Two});
    return scheme_->query(condensation_->dag(), cu, cv);
}

std::optional<WitnessPath> QuerySession::cs_query_path(VertexId u, VertexId v) const {
    if (!scheme_->capabilities().returns_paths)
        throw CapabilityError("scheme '" + to_string(scheme_->kind()) +
                              "' cannot produce witness paths");
    check_vertex(graph_, u, "source");
    check_vertex(graph_, v, "target");

    const std::uint32_t src = IndexVertex{u, Side::One}.encode();
    const std::uint32_t dst = IndexVertex{v, Side::Two}.encode();
    const ComponentId target_comp = condensation_->component_of({v, Side::Two});
    if (!scheme_->may_reach(condensation_->component_of({u, Side::One}), target_comp))
        return std::nullopt;

    // DFS over the view; branches whose component provably misses the target
    // are discarded. First-discovery links reconstruct the index path.
    struct Prev {
        std::uint32_t from = 0xffffffffu;
        IndexEdgeKind kind = IndexEdgeKind::Bridge;
        std::uint32_t aux = 0;
    };
    std::vector<Prev> prev(view_->index_vertex_count());
    std::vector<bool> visited(view_->index_vertex_count(), false);
    std::vector<std::uint32_t> stack;
    visited[src] = true;
    stack.push_back(src);
    bool found = false;

    while (!stack.empty() && !found) {
        const std::uint32_t code = stack.back();
        stack.pop_back();
        view_->for_each_successor(IndexVertex::decode(code), [&](const IndexEdge& e) {
            if (found) return;
            const std::uint32_t next = e.to.encode();
            if (visited[next]) return;
            if (!scheme_->may_reach(condensation_->component_of(e.to), target_comp)) return;
            visited[next] = true;
            prev[next] = {code, e.kind, e.aux};
            if (next == dst) {
                found = true;
                return;
            }
            stack.push_back(next);
        });
    }
    if (!found) return std::nullopt;

    // Index path, front to back.
    struct Step {
        IndexEdgeKind kind;
        std::uint32_t aux;
        std::uint32_t to;
    };
    std::vector<Step> steps;
    for (std::uint32_t cur = dst; cur != src; cur = prev[cur].from)
        steps.push_back({prev[cur].kind, prev[cur].aux, cur});
    std::reverse(steps.begin(), steps.end());

    WitnessPath path;
    path.vertices.push_back(u);
    for (const Step& s : steps) {
        const VertexId to = IndexVertex::decode(s.to).vertex;
        switch (s.kind) {
        case IndexEdgeKind::Bridge:
            break; // same graph vertex, no label
        case IndexEdgeKind::Eps:
            path.vertices.push_back(to);
            path.labels.push_back(Label::eps());
            break;
        case IndexEdgeKind::Open:
            path.vertices.push_back(to);
            path.labels.push_back(Label::open(s.aux));
            break;
        case IndexEdgeKind::Close:
            path.vertices.push_back(to);
            path.labels.push_back(Label::close(s.aux));
            break;
        case IndexEdgeKind::Summary: {
            const SummaryEdge& edge = summaries_.edges()[s.aux];
            append_summary_path(edge.source, edge.target, path, 0);
            break;
        }
        }
    }
    return path;
}

WitnessPath QuerySession::expand_summary(const SummaryEdge& edge) const {
    const auto recorded = summaries_.find(edge.source, edge.target);
    if (!recorded || !(*recorded == edge))
        throw ParamError("not a summary edge of this graph: (" + std::to_string(edge.source) +
                         ", " + std::to_string(edge.target) + ")");
    WitnessPath path;
    path.vertices.push_back(edge.source);
    append_summary_path(edge.source, edge.target, path, 0);
    return path;
}

void QuerySession::append_summary_path(VertexId source, VertexId target, WitnessPath& out,
                                       std::uint32_t depth) const {
    if (depth > summaries_.size())
        throw Error("summary expansion exceeds the summary count; witness links are inconsistent");
    const auto edge = summaries_.find(source, target);
    if (!edge)
        throw Error("witness references a missing summary edge (" + std::to_string(source) +
                    ", " + std::to_string(target) + ")");

    out.vertices.push_back(edge->entry);
    out.labels.push_back(Label::open(edge->site));
    for (const SameLevelStep& step : summaries_.same_level_path(edge->entry, edge->exit)) {
        if (step.kind == SameLevelStep::Kind::Eps) {
            out.vertices.push_back(step.to);
            out.labels.push_back(Label::eps());
        } else {
            append_summary_path(step.from, step.to, out, depth + 1);
        }
    }
    out.vertices.push_back(edge->target);
    out.labels.push_back(Label::close(edge->site));
}

} // namespace csreach
