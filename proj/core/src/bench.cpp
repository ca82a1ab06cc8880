#include "csreach/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "csreach/errors.hpp"
#include "csreach/oracle.hpp"
#include "csreach/rng.hpp"

namespace csreach {

namespace {

using QueryFn = std::function<bool(VertexId, VertexId)>;
using Pairs = std::vector<std::pair<VertexId, VertexId>>;

QueryPairSample sample_pairs_impl(const QueryFn& query, std::uint32_t vertex_count,
                                  std::uint32_t n_reachable, std::uint32_t n_unreachable,
                                  std::uint64_t seed, std::uint64_t budget) {
    QueryPairSample sample;
    if (vertex_count == 0) {
        sample.reachable_short = n_reachable > 0;
        sample.unreachable_short = n_unreachable > 0;
        return sample;
    }
    if (budget == 0)
        budget = 1000ull * (static_cast<std::uint64_t>(n_reachable) + n_unreachable) + 1000;

    Rng rng(seed);
    while (sample.attempts < budget && (sample.reachable.size() < n_reachable ||
                                        sample.unreachable.size() < n_unreachable)) {
        const auto u = static_cast<VertexId>(rng.next_below(vertex_count));
        const auto v = static_cast<VertexId>(rng.next_below(vertex_count));
        ++sample.attempts;
        if (query(u, v)) {
            if (sample.reachable.size() < n_reachable) sample.reachable.emplace_back(u, v);
        } else {
            if (sample.unreachable.size() < n_unreachable) sample.unreachable.emplace_back(u, v);
        }
    }
    sample.reachable_short = sample.reachable.size() < n_reachable;
    sample.unreachable_short = sample.unreachable.size() < n_unreachable;
    return sample;
}

// Median wall-clock milliseconds for answering the whole batch, over repeats.
// The accumulated answer bits keep the calls observable.
double time_batch_ms(const QueryFn& query, const Pairs& pairs, std::uint32_t repeats,
                     std::uint64_t& sink) {
    std::vector<double> times;
    times.reserve(repeats);
    for (std::uint32_t rep = 0; rep < repeats; ++rep) {
        std::uint64_t acc = 0;
        const auto start = std::chrono::steady_clock::now();
        for (const auto& [u, v] : pairs) acc += query(u, v) ? 1 : 0;
        const auto stop = std::chrono::steady_clock::now();
        sink += acc;
        times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    return times.size() % 2 == 1 ? times[mid] : (times[mid - 1] + times[mid]) / 2.0;
}

void check_batch(const QueryFn& query, const Pairs& pairs, bool expected,
                 const std::string& scheme) {
    for (const auto& [u, v] : pairs) {
        if (query(u, v) != expected)
            throw Error("bench: scheme '" + scheme + "' disagrees with the sampled label for (" +
                        std::to_string(u) + ", " + std::to_string(v) + ")");
    }
}

} // namespace

QueryPairSample sample_query_pairs(const QuerySession& session, std::uint32_t n_reachable,
                                   std::uint32_t n_unreachable, std::uint64_t seed,
                                   std::uint64_t budget) {
    return sample_pairs_impl(
        [&](VertexId u, VertexId v) { return session.cs_query(u, v); },
        session.graph().vertex_count(), n_reachable, n_unreachable, seed, budget);
}

BenchReport run_bench(const ProgramValidGraph& g, const BenchOptions& options) {
    if (options.repeats == 0) throw ParamError("bench: repeats must be at least 1");
    BenchReport report;

    // One shared pipeline; only the index build differs per scheme.
    const SummaryEdgeSet summaries = compute_summaries(g);
    const IndexingGraphView view(g, summaries);
    const Condensation cond(view);

    struct Built {
        SchemeKind kind;
        ReachScheme scheme;
        double build_ms;
    };
    std::vector<Built> built;
    for (SchemeKind kind : options.schemes) {
        try {
            const auto start = std::chrono::steady_clock::now();
            ReachScheme scheme =
                ReachScheme::build(kind, cond.dag(), options.limits, options.grail);
            const auto stop = std::chrono::steady_clock::now();
            built.push_back({kind, std::move(scheme),
                             std::chrono::duration<double, std::milli>(stop - start).count()});
        } catch (const GuardError& e) {
            report.warnings.push_back("scheme " + to_string(kind) + " skipped: " + e.what());
        }
    }

    auto scheme_query = [&cond](const ReachScheme* scheme) {
        return QueryFn([&cond, scheme](VertexId u, VertexId v) {
            return scheme->query(cond.dag(), cond.component_of({u, Side::One}),
                                 cond.component_of({v, Side::Two}));
        });
    };
    const QueryFn tabulation = [&](VertexId u, VertexId v) {
        return tabulation_query(g, summaries, u, v);
    };

    // Label pairs with the first built index (all schemes are exact); the
    // tabulation baseline then cross-checks the labels, and vice versa.
    const QueryFn label_query =
        built.empty() ? tabulation : scheme_query(&built.front().scheme);
    const QueryPairSample sample =
        sample_pairs_impl(label_query, g.vertex_count(), options.n_reachable,
                          options.n_unreachable, options.seed, options.sample_budget);
    if (sample.reachable_short)
        report.warnings.push_back("sampled only " + std::to_string(sample.reachable.size()) +
                                  " of " + std::to_string(options.n_reachable) +
                                  " reachable pairs within budget");
    if (sample.unreachable_short)
        report.warnings.push_back("sampled only " + std::to_string(sample.unreachable.size()) +
                                  " of " + std::to_string(options.n_unreachable) +
                                  " unreachable pairs within budget");

    std::uint64_t sink = 0;
    auto push_rows = [&](const std::string& name, double build_ms, std::uint64_t index_bytes,
                         const QueryFn& query, double tab_r_ms, double tab_nr_ms) {
        check_batch(query, sample.reachable, true, name);
        check_batch(query, sample.unreachable, false, name);
        const double r_ms = time_batch_ms(query, sample.reachable, options.repeats, sink);
        const double nr_ms = time_batch_ms(query, sample.unreachable, options.repeats, sink);
        auto speedup = [](double base, double mine) {
            if (base <= 0.0 && mine <= 0.0) return 1.0;
            return base / std::max(mine, 1e-9);
        };
        BenchRow row;
        row.graph = options.graph_name;
        row.vertices = g.vertex_count();
        row.edges = g.edges().size();
        row.summaries = summaries.size();
        row.scheme = name;
        row.build_ms = build_ms;
        row.index_bytes = index_bytes;

        row.batch = options.n_reachable;
        row.query_class = "R";
        row.n = static_cast<std::uint32_t>(sample.reachable.size());
        row.total_ms = r_ms;
        row.speedup_vs_tabulation = tab_r_ms < 0 ? 1.0 : speedup(tab_r_ms, r_ms);
        report.rows.push_back(row);

        row.batch = options.n_unreachable;
        row.query_class = "NR";
        row.n = static_cast<std::uint32_t>(sample.unreachable.size());
        row.total_ms = nr_ms;
        row.speedup_vs_tabulation = tab_nr_ms < 0 ? 1.0 : speedup(tab_nr_ms, nr_ms);
        report.rows.push_back(row);
        return std::make_pair(r_ms, nr_ms);
    };

    // Baseline first (negative sentinel pins its own speedup at 1.0).
    const auto [tab_r, tab_nr] = push_rows("tabulation", 0.0, 0, tabulation, -1.0, -1.0);
    for (const Built& b : built)
        push_rows(to_string(b.kind), b.build_ms, b.scheme.byte_size(), scheme_query(&b.scheme),
                  tab_r, tab_nr);
    (void)sink;
    return report;
}

std::string to_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "graph,vertices,edges,summaries,scheme,build_ms,index_bytes,batch,class,n,total_ms,"
           "speedup_vs_tabulation\n";
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const BenchRow& row : report.rows) {
        std::string graph = row.graph;
        std::replace(graph.begin(), graph.end(), ',', '_');
        out << graph << ',' << row.vertices << ',' << row.edges << ',' << row.summaries << ','
            << row.scheme << ',' << row.build_ms << ',' << row.index_bytes << ',' << row.batch
            << ',' << row.query_class << ',' << row.n << ',' << row.total_ms << ','
            << row.speedup_vs_tabulation << '\n';
    }
    return out.str();
}

} // namespace csreach
