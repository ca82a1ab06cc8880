#include "doctest.h"

#include <algorithm>
#include <vector>

#include "csreach/gen.hpp"
#include "csreach/indexing_graph.hpp"
#include "csreach/summary.hpp"

#include "test_support.hpp"

using namespace csreach;
using namespace csreach::test;

namespace {

IndexingGraphView view_of(const ProgramValidGraph& g, const SummaryEdgeSet& s) {
    return IndexingGraphView(g, s);
}

std::uint64_t expected_edge_count(const ProgramValidGraph& g, const SummaryEdgeSet& s) {
    const EdgePartition parts = edge_sets(g);
    return 2 * parts.eps.size() + parts.open.size() + parts.close.size() + 2 * s.size() +
           g.vertex_count();
}

} // namespace

TEST_SUITE("unit.indexing") {

TEST_CASE("the seven-vertex example counts 14 vertices and 15 edges") {
    const ProgramValidGraph g = load_fixture("callchain.pvg");
    const SummaryEdgeSet s = compute_summaries(g);
    const IndexingGraphStats stats = view_of(g, s).stats();
    CHECK(stats.vertex_count == 14);
    CHECK(stats.edge_count == 15);
}

TEST_CASE("the call-structure example counts 18 vertices and 23 edges") {
    const ProgramValidGraph g = load_fixture("interproc.pvg");
    const SummaryEdgeSet s = compute_summaries(g);
    REQUIRE(s.size() == 3);
    const IndexingGraphStats stats = view_of(g, s).stats();
    CHECK(stats.vertex_count == 2 * 9);
    CHECK(stats.edge_count == 2 * 1 + 3 + 3 + 2 * 3 + 9);
}

TEST_CASE("stats match the closed-form count on generated graphs") {
    for (std::uint64_t seed = 300; seed < 330; ++seed) {
        GenParams params;
        params.functions = 2 + static_cast<std::uint32_t>(seed % 5);
        params.vertices_per_function_min = 2;
        params.vertices_per_function_max = 8;
        params.call_sites = 1 + static_cast<std::uint32_t>(seed % 4);
        params.alpha = 1 + static_cast<std::uint32_t>(seed % 3);
        params.allow_recursion = (seed % 2) == 0;
        params.seed = seed;
        const ProgramValidGraph g = generate(params);
        const SummaryEdgeSet s = compute_summaries(g);
        const IndexingGraphStats stats = view_of(g, s).stats();
        CHECK(stats.vertex_count == 2ull * g.vertex_count());
        CHECK(stats.edge_count == expected_edge_count(g, s));
    }
}

TEST_CASE("side one lists the bridge first, then close and summary moves") {
    const ProgramValidGraph g = load_fixture("callchain.pvg");
    const SummaryEdgeSet s = compute_summaries(g);
    const IndexingGraphView view = view_of(g, s);

    // b on side one: the bridge to b's side-two copy, then the summary to d.
    const auto b1 = view.successors(IndexVertex{1, Side::One});
    REQUIRE(b1.size() == 2);
    CHECK(b1[0].kind == IndexEdgeKind::Bridge);
    CHECK(b1[0].to == IndexVertex{1, Side::Two});
    CHECK(b1[1].kind == IndexEdgeKind::Summary);
    CHECK(b1[1].to == IndexVertex{3, Side::One});

    // e on side two: only the open edge to f stays on side two.
    const auto e2 = view.successors(IndexVertex{4, Side::Two});
    REQUIRE(e2.size() == 1);
    CHECK(e2[0].kind == IndexEdgeKind::Open);
    CHECK(e2[0].to == IndexVertex{5, Side::Two});
    CHECK(e2[0].aux == 4);

    // Open edges never appear on side one; close edges never on side two.
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (const IndexEdge& e : view.successors(IndexVertex{v, Side::One}))
            CHECK(e.kind != IndexEdgeKind::Open);
        for (const IndexEdge& e : view.successors(IndexVertex{v, Side::Two})) {
            CHECK(e.kind != IndexEdgeKind::Close);
            CHECK(e.kind != IndexEdgeKind::Bridge);
        }
    }
}

TEST_CASE("every side-one vertex bridges to its side-two copy") {
    const ProgramValidGraph g = load_fixture("interproc.pvg");
    const SummaryEdgeSet s = compute_summaries(g);
    const IndexingGraphView view = view_of(g, s);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto succ = view.successors(IndexVertex{v, Side::One});
        REQUIRE_FALSE(succ.empty());
        CHECK(succ[0].kind == IndexEdgeKind::Bridge);
        CHECK(succ[0].to == IndexVertex{v, Side::Two});
        const auto pred = view.predecessors(IndexVertex{v, Side::Two});
        REQUIRE_FALSE(pred.empty());
        CHECK(pred[0].kind == IndexEdgeKind::Bridge);
        CHECK(pred[0].to == IndexVertex{v, Side::One});
    }
}

TEST_CASE("predecessors are the exact transpose of successors") {
    const ProgramValidGraph g = load_fixture("interproc.pvg");
    const SummaryEdgeSet s = compute_summaries(g);
    const IndexingGraphView view = view_of(g, s);

    std::vector<std::tuple<std::uint32_t, std::uint32_t, IndexEdgeKind, std::uint32_t>> fwd, bwd;
    for (std::uint32_t code = 0; code < view.index_vertex_count(); ++code) {
        const IndexVertex iv = IndexVertex::decode(code);
        for (const IndexEdge& e : view.successors(iv))
            fwd.emplace_back(code, e.to.encode(), e.kind, e.aux);
        for (const IndexEdge& e : view.predecessors(iv))
            bwd.emplace_back(e.to.encode(), code, e.kind, e.aux);
    }
    std::sort(fwd.begin(), fwd.end());
    std::sort(bwd.begin(), bwd.end());
    CHECK(fwd == bwd);
    CHECK(fwd.size() == view.stats().edge_count);
}

TEST_CASE("summary edges appear on both sides with their edge index") {
    const ProgramValidGraph g = load_fixture("interproc.pvg");
    const SummaryEdgeSet s = compute_summaries(g);
    const IndexingGraphView view = view_of(g, s);
    for (std::uint32_t i = 0; i < s.size(); ++i) {
        const SummaryEdge& edge = s.edges()[i];
        for (Side side : {Side::One, Side::Two}) {
            bool found = false;
            for (const IndexEdge& e : view.successors(IndexVertex{edge.source, side}))
                found |= e.kind == IndexEdgeKind::Summary && e.to == IndexVertex{edge.target, side} &&
                         e.aux == i;
            CHECK(found);
        }
    }
}

} // TEST_SUITE
