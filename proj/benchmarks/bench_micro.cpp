// Microbenchmarks for the pipeline stages: summary construction, index
// builds, and single-query latency per scheme. Graphs are generated
// deterministically; the argument is the function count, so vertex count
// scales linearly with it. Setup work happens outside the timed loops.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "csreach/condense.hpp"
#include "csreach/gen.hpp"
#include "csreach/indexing_graph.hpp"
#include "csreach/oracle.hpp"
#include "csreach/rng.hpp"
#include "csreach/scheme.hpp"
#include "csreach/session.hpp"
#include "csreach/summary.hpp"

namespace {

using namespace csreach;

ProgramValidGraph bench_graph(std::int64_t functions) {
    GenParams params;
    params.functions = static_cast<std::uint32_t>(functions);
    params.vertices_per_function_min = 25;
    params.vertices_per_function_max = 25;
    params.eps_edge_density = 1.0;
    params.call_sites = static_cast<std::uint32_t>(2 * functions);
    params.alpha = 2;
    params.allow_recursion = true;
    params.seed = 20260816;
    return generate(params);
}

std::vector<std::pair<VertexId, VertexId>> sample_pairs(const ProgramValidGraph& g,
                                                        std::size_t count) {
    Rng rng(7);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        pairs.push_back({static_cast<VertexId>(rng.next_below(g.vertex_count())),
                         static_cast<VertexId>(rng.next_below(g.vertex_count()))});
    return pairs;
}

void BM_SummaryBuild(benchmark::State& state) {
    const ProgramValidGraph g = bench_graph(state.range(0));
    for (auto _ : state) {
        SummaryEdgeSet summaries = compute_summaries(g);
        benchmark::DoNotOptimize(summaries.size());
    }
    state.counters["vertices"] = static_cast<double>(g.vertex_count());
}

void BM_Condense(benchmark::State& state) {
    const ProgramValidGraph g = bench_graph(state.range(0));
    const SummaryEdgeSet summaries = compute_summaries(g);
    const IndexingGraphView view(g, summaries);
    for (auto _ : state) {
        Condensation cond(view);
        benchmark::DoNotOptimize(cond.dag().component_count());
    }
}

void BM_IndexBuild(benchmark::State& state, SchemeKind kind) {
    const ProgramValidGraph g = bench_graph(state.range(0));
    const SummaryEdgeSet summaries = compute_summaries(g);
    const IndexingGraphView view(g, summaries);
    const Condensation cond(view);
    BuildLimits limits;
    limits.tc_max_components = 1u << 20;
    for (auto _ : state) {
        ReachScheme scheme = ReachScheme::build(kind, cond.dag(), limits);
        benchmark::DoNotOptimize(scheme.byte_size());
    }
    state.counters["components"] = static_cast<double>(cond.dag().component_count());
}

void BM_Query(benchmark::State& state, SchemeKind kind) {
    BuildLimits limits;
    limits.tc_max_components = 1u << 20;
    const QuerySession session(bench_graph(state.range(0)), kind, limits);
    const auto pairs = sample_pairs(session.graph(), 1024);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [u, v] = pairs[i++ & 1023];
        benchmark::DoNotOptimize(session.cs_query(u, v));
    }
}

void BM_QueryTabulation(benchmark::State& state) {
    const ProgramValidGraph g = bench_graph(state.range(0));
    const SummaryEdgeSet summaries = compute_summaries(g);
    const auto pairs = sample_pairs(g, 1024);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [u, v] = pairs[i++ & 1023];
        benchmark::DoNotOptimize(tabulation_query(g, summaries, u, v));
    }
}

void BM_WitnessPath(benchmark::State& state) {
    const QuerySession session(bench_graph(state.range(0)), SchemeKind::Grail);
    // Keep only reachable pairs so every iteration pays for path assembly.
    std::vector<std::pair<VertexId, VertexId>> reachable;
    for (const auto& [u, v] : sample_pairs(session.graph(), 4096))
        if (session.cs_query(u, v)) reachable.push_back({u, v});
    if (reachable.empty()) {
        state.SkipWithError("no reachable pairs in the sample");
        return;
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [u, v] = reachable[i++ % reachable.size()];
        benchmark::DoNotOptimize(session.cs_query_path(u, v));
    }
}

} // namespace

BENCHMARK(BM_SummaryBuild)->Arg(8)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Condense)->Arg(8)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_IndexBuild, tc, csreach::SchemeKind::Tc)
    ->Arg(8)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_IndexBuild, dual, csreach::SchemeKind::Dual)
    ->Arg(8)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_IndexBuild, grail, csreach::SchemeKind::Grail)
    ->Arg(8)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Query, tc, csreach::SchemeKind::Tc)->Arg(8)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_Query, dual, csreach::SchemeKind::Dual)->Arg(8)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_Query, grail, csreach::SchemeKind::Grail)->Arg(8)->Arg(64)->Arg(256);
BENCHMARK(BM_QueryTabulation)->Arg(8)->Arg(64)->Arg(256);
BENCHMARK(BM_WitnessPath)->Arg(8)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
