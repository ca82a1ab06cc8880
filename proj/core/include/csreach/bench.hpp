// csreach: batched query benchmarking against the tabulation baseline.
//
// Pairs are sampled uniformly (rejection sampling under a budget) and
// labeled by actual query results; batches are timed wall-clock with the
// monotonic clock, medians over repeats, I/O and verification excluded.
// Every timed answer is re-checked against the sampled label afterwards.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csreach/scheme.hpp"
#include "csreach/session.hpp"

namespace csreach {

struct QueryPairSample {
    std::vector<std::pair<VertexId, VertexId>> reachable;
    std::vector<std::pair<VertexId, VertexId>> unreachable;
    // Set when the sampling budget ran out before reaching the requested
    // counts; the vectors then hold what was achieved.
    bool reachable_short = false;
    bool unreachable_short = false;
    std::uint64_t attempts = 0;
};

// Uniform rejection sampling of query pairs labeled by session.cs_query.
// budget 0 means a default proportional to the request.
QueryPairSample sample_query_pairs(const QuerySession& session, std::uint32_t n_reachable,
                                   std::uint32_t n_unreachable, std::uint64_t seed,
                                   std::uint64_t budget = 0);

struct BenchRow {
    std::string graph;
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t summaries = 0;
    std::string scheme; // "tabulation", "tc", "dual", "grail"
    double build_ms = 0;
    std::uint64_t index_bytes = 0;
    std::uint32_t batch = 0; // requested batch size
    std::string query_class; // "R" or "NR"
    std::uint32_t n = 0;     // achieved batch size
    double total_ms = 0;     // median batch time over repeats
    double speedup_vs_tabulation = 1.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<std::string> warnings; // sampling shortfalls, per-scheme guard failures
};

struct BenchOptions {
    std::string graph_name = "graph";
    std::vector<SchemeKind> schemes;
    std::uint32_t n_reachable = 1000;
    std::uint32_t n_unreachable = 1000;
    std::uint32_t repeats = 3;
    std::uint64_t seed = 1;
    std::uint64_t sample_budget = 0;
    BuildLimits limits;
    GrailParams grail;
};

// Benchmarks the schemes (index build once each; guard failures become
// warnings while the run continues) and the tabulation baseline on the same
// sampled batches.
BenchReport run_bench(const ProgramValidGraph& g, const BenchOptions& options);

// CSV with the fixed header
// graph,vertices,edges,summaries,scheme,build_ms,index_bytes,batch,class,n,total_ms,speedup_vs_tabulation
std::string to_csv(const BenchReport& report);

} // namespace csreach
