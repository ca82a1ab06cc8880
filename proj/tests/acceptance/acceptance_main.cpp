// Acceptance gate: one self-contained check per release criterion, each
// printing exactly one PASS/FAIL line. Run with a criterion number (1-9) or
// "all". Exit 0 iff every selected criterion passes.
#include <chrono>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "csreach/bench.hpp"
#include "csreach/errors.hpp"
#include "csreach/gen.hpp"
#include "csreach/oracle.hpp"
#include "csreach/scheme.hpp"
#include "csreach/session.hpp"

#include "test_support.hpp"

using namespace csreach;
using namespace csreach::test;

namespace {

struct Failure {
    std::string detail;
};

void expect(bool condition, const std::string& detail) {
    if (!condition) throw Failure{detail};
}

// Parameters for the correctness corpus: seeds map onto 20-60 vertex graphs
// with alpha in {1,2,3} and recursion enabled for every other seed.
GenParams corpus_params(std::uint64_t seed) {
    GenParams params;
    params.functions = 2 + static_cast<std::uint32_t>(seed % 5);
    params.vertices_per_function_min =
        (20 + params.functions - 1) / params.functions;
    params.vertices_per_function_max = 60 / params.functions;
    params.eps_edge_density = 0.5 + 0.5 * static_cast<double>(seed % 4);
    params.call_sites = 1 + static_cast<std::uint32_t>(seed % 6);
    params.alpha = 1 + static_cast<std::uint32_t>(seed % 3);
    params.allow_recursion = (seed % 2) == 1;
    params.seed = seed;
    return params;
}

struct BuiltPipeline {
    SummaryEdgeSet summaries;
    IndexingGraphView view;
    Condensation condensation;

    explicit BuiltPipeline(const ProgramValidGraph& g)
        : summaries(compute_summaries(g)),
          view(g, summaries),
          condensation(view) {}

    bool query(const ReachScheme& scheme, VertexId u, VertexId v) const {
        return scheme.query(condensation.dag(),
                            condensation.component_of(IndexVertex{u, Side::One}),
                            condensation.component_of(IndexVertex{v, Side::Two}));
    }
};

// --------------------------------------------------------------- criteria --

// Closure, tabulation, and all three index schemes agree on every pair of
// 1,000 generated graphs.
std::string criterion_1() {
    std::uint64_t graphs = 0, pairs = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const ProgramValidGraph g = generate(corpus_params(seed));
        expect(g.vertex_count() >= 20 && g.vertex_count() <= 60,
               "seed " + std::to_string(seed) + " generated " +
                   std::to_string(g.vertex_count()) + " vertices, outside 20-60");

        const ReachRelation closure = cfl_closure(g);
        const BuiltPipeline pipeline(g);
        const ReachScheme tc = ReachScheme::build(SchemeKind::Tc, pipeline.condensation.dag());
        const ReachScheme dual = ReachScheme::build(SchemeKind::Dual, pipeline.condensation.dag());
        const ReachScheme grail =
            ReachScheme::build(SchemeKind::Grail, pipeline.condensation.dag(), BuildLimits{},
                               GrailParams{.k_labels = 5, .seed = seed});

        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                const bool want = closure.contains(NonTerminal::S, u, v);
                const std::string where = "seed " + std::to_string(seed) + " pair (" +
                                          std::to_string(u) + ", " + std::to_string(v) + ")";
                expect(tabulation_query(g, pipeline.summaries, u, v) == want,
                       where + ": tabulation disagrees with the closure");
                expect(pipeline.query(tc, u, v) == want, where + ": tc disagrees");
                expect(pipeline.query(dual, u, v) == want, where + ": dual disagrees");
                expect(pipeline.query(grail, u, v) == want, where + ": grail disagrees");
                ++pairs;
            }
        }
        ++graphs;
    }
    return "closure == tabulation == tc/dual/grail on " + std::to_string(graphs) +
           " graphs, " + std::to_string(pairs) + " pairs";
}

// The two worked graph examples reproduce exactly.
std::string criterion_2() {
    const ProgramValidGraph interproc = load_fixture("interproc.pvg");
    expect(validate(interproc).ok, "the call-structure fixture fails validation");
    const QuerySession s1(load_fixture("interproc.pvg"), SchemeKind::Grail);
    expect(s1.cs_query(1, 8), "Q(b, i) should be reachable");
    expect(!s1.cs_query(5, 8), "Q(f, i) should be unreachable");

    const QuerySession s5(load_fixture("callchain.pvg"), SchemeKind::Grail);
    expect(s5.cs_query(0, 5), "Q(0, 5) should be reachable");
    expect(s5.cs_query(6, 2), "Q(g, c) should be reachable");
    for (VertexId v = 0; v < 7; ++v)
        if (v != 2 && v != 6)
            expect(!s5.cs_query(6, v), "Q(g, " + std::to_string(v) + ") should be unreachable");

    const auto& summaries = s5.summaries();
    expect(summaries.size() == 1 && summaries.edges()[0].source == 1 &&
               summaries.edges()[0].target == 3,
           "the summary set should be exactly {(b, d)}");

    const auto witness = s5.cs_query_path(0, 5);
    expect(witness.has_value(), "(0, 5) should produce a witness");
    const std::vector<Label> labels = {Label::close(1), Label::open(2), Label::close(2),
                                       Label::close(3), Label::open(4)};
    expect(witness->labels == labels, "the (0, 5) witness labels are wrong");
    expect(derives(witness->labels, NonTerminal::S), "the (0, 5) witness must derive S");
    return "both worked examples reproduce, including the (0, 5) witness string";
}

// The dual-labeling worked example: composed link entry and tc agreement.
std::string criterion_3() {
    const CondensedDag dag = example_dual_dag();
    const DualLabelingIndex dual = DualLabelingIndex::build(dag);
    const TcIndex tc = TcIndex::build(dag);

    expect(dual.link_table_contains({7, 9}, {1, 1}),
           "the link table misses the composed entry [7,9] -> [1,1]");
    bool has_pair = false;
    for (const auto& [a, b] : dual.link_table()) has_pair |= a == 7 && b == 0;
    expect(has_pair, "the link table misses the composed pair (7, 0)");

    for (ComponentId u = 0; u < dag.component_count(); ++u)
        for (ComponentId v = 0; v < dag.component_count(); ++v)
            expect(dual.query(u, v) == tc.query(u, v),
                   "dual and tc disagree on (" + std::to_string(u) + ", " + std::to_string(v) +
                       ")");
    return "link table holds [7,9] -> [1,1] and dual == tc on all pairs";
}

// The interval-labeling worked example plus randomized agreement with tc.
std::string criterion_4() {
    const CondensedDag dag = example_interval_dag();
    const GrailIndex fixed = GrailIndex::build_with_orders(dag, example_interval_orders());
    bool containment_fails = false;
    for (std::uint32_t l = 0; l < fixed.k_labels(); ++l)
        containment_fails |= !fixed.label(l, 5).contains(fixed.label(l, 6));
    expect(containment_fails, "no labeling refutes (h, j) by containment");

    GrailQueryStats stats;
    expect(!grail_query(fixed, dag, 5, 6, &stats), "grail_query(h, j) should be false");
    expect(stats.label_pruned, "the (h, j) refutation should come from the labels");
    expect(stats.expansions == 0, "the (h, j) refutation should expand nothing");

    Rng rng(20260816);
    std::uint64_t pairs = 0;
    for (int round = 0; round < 200; ++round) {
        const CondensedDag random = random_dag(rng, 200);
        const TcIndex tc = TcIndex::build(random);
        const GrailIndex grail =
            GrailIndex::build(random, GrailParams{.k_labels = 5, .seed = 7000 + static_cast<std::uint64_t>(round)});
        for (ComponentId u = 0; u < random.component_count(); ++u)
            for (ComponentId v = 0; v < random.component_count(); ++v) {
                expect(grail_query(grail, random, u, v) == tc.query(u, v),
                       "grail and tc disagree on round " + std::to_string(round) + " pair (" +
                           std::to_string(u) + ", " + std::to_string(v) + ")");
                ++pairs;
            }
    }
    return "(h, j) is label-pruned with zero expansions; grail == tc on 200 DAGs (" +
           std::to_string(pairs) + " pairs)";
}

// Indexing-graph sizes match the closed form everywhere, and grow
// monotonically across generated sizes.
std::string criterion_5() {
    auto check_counts = [](const ProgramValidGraph& g) {
        const SummaryEdgeSet summaries = compute_summaries(g);
        const IndexingGraphView view(g, summaries);
        const EdgePartition parts = edge_sets(g);
        const IndexingGraphStats stats = view.stats();
        expect(stats.vertex_count == 2ull * g.vertex_count(), "vertex count is not 2|V|");
        const std::uint64_t expected = 2 * parts.eps.size() + parts.open.size() +
                                       parts.close.size() + 2 * summaries.size() +
                                       g.vertex_count();
        expect(stats.edge_count == expected,
               "edge count " + std::to_string(stats.edge_count) + " != closed form " +
                   std::to_string(expected));
        return stats;
    };

    check_counts(load_fixture("interproc.pvg"));
    check_counts(load_fixture("callchain.pvg"));
    check_counts(load_fixture("header_example.pvg"));
    for (std::uint64_t seed = 1; seed <= 100; ++seed) check_counts(generate(corpus_params(seed)));

    std::uint64_t last_vertices = 0, last_edges = 0;
    for (std::uint32_t functions : {10u, 20u, 40u, 80u, 160u}) {
        GenParams params;
        params.functions = functions;
        params.vertices_per_function_min = 4;
        params.vertices_per_function_max = 10;
        params.eps_edge_density = 1.0;
        params.call_sites = functions;
        params.alpha = 2;
        params.seed = 9;
        const IndexingGraphStats stats = check_counts(generate(params));
        expect(stats.vertex_count > last_vertices && stats.edge_count > last_edges,
               "indexing graph sizes should grow with the input");
        last_vertices = stats.vertex_count;
        last_edges = stats.edge_count;
    }
    return "sizes equal the closed form on fixtures plus 105 generated graphs, growing "
           "monotonically";
}

// Summary counts respect |summaries| <= alpha^2 |V| on every generated graph.
std::string criterion_6() {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const GenParams params = corpus_params(seed);
        const ProgramValidGraph g = generate(params);
        const SummaryEdgeSet summaries = compute_summaries(g);
        const std::uint64_t bound =
            static_cast<std::uint64_t>(params.alpha) * params.alpha * g.vertex_count();
        expect(summaries.size() <= bound,
               "seed " + std::to_string(seed) + ": " + std::to_string(summaries.size()) +
                   " summaries exceed the bound " + std::to_string(bound));
    }
    return "summary counts stay within alpha^2 |V| on 200 generated graphs";
}

// Batched queries through the interval index beat tabulation by 10x overall
// and 50x on the unreachable batch, on a 100k-vertex graph.
std::string criterion_7() {
    GenParams params;
    params.functions = 2500;
    params.vertices_per_function_min = 40;
    params.vertices_per_function_max = 40;
    params.eps_edge_density = 1.5;
    params.call_sites = 20000;
    params.alpha = 2;
    params.allow_recursion = true;
    params.seed = 77;
    const ProgramValidGraph g = generate(params);
    expect(g.vertex_count() >= 100000, "the benchmark graph needs at least 1e5 vertices");
    expect(g.edges().size() >= 200000, "the benchmark graph needs at least 2e5 edges");

    BenchOptions options;
    options.graph_name = "acceptance";
    options.schemes = {SchemeKind::Grail};
    options.n_reachable = 1000;
    options.n_unreachable = 1000;
    options.repeats = 3;
    options.seed = 7;
    const BenchReport report = run_bench(g, options);
    expect(report.rows.size() == 4, "expected tabulation and grail rows");
    const BenchRow& tab_r = report.rows[0];
    const BenchRow& tab_nr = report.rows[1];
    const BenchRow& grail_r = report.rows[2];
    const BenchRow& grail_nr = report.rows[3];
    expect(tab_r.n == 1000 && tab_nr.n == 1000, "sampling fell short of 1000 + 1000 pairs");
    expect(grail_r.scheme == "grail" && grail_nr.query_class == "NR",
           "unexpected bench row layout");

    const double overall =
        (tab_r.total_ms + tab_nr.total_ms) / std::max(grail_r.total_ms + grail_nr.total_ms, 1e-9);
    const double negative = tab_nr.total_ms / std::max(grail_nr.total_ms, 1e-9);
    std::ostringstream detail;
    detail.setf(std::ios::fixed);
    detail.precision(1);
    detail << "|V|=" << g.vertex_count() << " |E|=" << g.edges().size() << ", overall "
           << overall << "x, unreachable " << negative << "x";
    expect(overall >= 10.0, "overall speedup below 10x: " + detail.str());
    expect(negative >= 50.0, "unreachable speedup below 50x: " + detail.str());
    return detail.str() + " (needs 10x / 50x)";
}

// Ten thousand witness paths re-validate against the graph and the grammar.
std::string criterion_8() {
    std::uint64_t checked = 0;
    for (std::uint64_t seed = 1; checked < 10000; ++seed) {
        expect(seed <= 2000, "the corpus ran dry before 10,000 witnesses");
        const ProgramValidGraph g = generate(corpus_params(seed));
        const QuerySession session(generate(corpus_params(seed)), SchemeKind::Grail);
        for (VertexId u = 0; u < g.vertex_count() && checked < 10000; ++u) {
            for (VertexId v = 0; v < g.vertex_count() && checked < 10000; ++v) {
                const auto path = session.cs_query_path(u, v);
                if (!path) continue;
                const std::string where = "seed " + std::to_string(seed) + " witness (" +
                                          std::to_string(u) + ", " + std::to_string(v) + ")";
                expect(path->vertices.size() == path->labels.size() + 1,
                       where + ": length mismatch");
                expect(path->vertices.front() == u && path->vertices.back() == v,
                       where + ": endpoints are wrong");
                for (std::size_t i = 0; i < path->labels.size(); ++i) {
                    bool found = false;
                    for (const Edge& e : g.out_edges(path->vertices[i]))
                        found |= e.dst == path->vertices[i + 1] && e.label == path->labels[i];
                    expect(found, where + ": step " + std::to_string(i) + " is not an edge");
                }
                expect(derives(path->labels, NonTerminal::S), where + ": labels do not derive S");
                ++checked;
            }
        }
    }
    return "10,000 witness paths re-validate (edges exist, labels derive S)";
}

// Graph files, summary dumps, and serialized indexes are bit-identical
// across two runs.
std::string criterion_9() {
    for (std::uint64_t seed : {1ull, 42ull, 999ull}) {
        const GenParams params = corpus_params(seed);

        const std::string text_a = write_graph(generate(params));
        const std::string text_b = write_graph(generate(params));
        expect(text_a == text_b, "graph files differ across runs");

        auto dump_summaries = [&] {
            const ProgramValidGraph g = parse_graph(text_a);
            const SummaryEdgeSet summaries = compute_summaries(g);
            std::ostringstream out;
            for (const SummaryEdge& e : summaries.edges())
                out << e.source << " " << e.target << " " << e.site << "\n";
            return out.str();
        };
        expect(dump_summaries() == dump_summaries(), "summary dumps differ across runs");

        auto serialize = [&](SchemeKind kind) {
            const ProgramValidGraph g = parse_graph(text_a);
            const SummaryEdgeSet summaries = compute_summaries(g);
            const IndexingGraphView view(g, summaries);
            const Condensation cond(view);
            const ReachScheme scheme = ReachScheme::build(kind, cond.dag(), BuildLimits{},
                                                          GrailParams{.k_labels = 5, .seed = 3});
            std::ostringstream out;
            scheme.save(out, fnv1a64(text_a));
            return out.str();
        };
        for (SchemeKind kind : {SchemeKind::Tc, SchemeKind::Dual, SchemeKind::Grail})
            expect(serialize(kind) == serialize(kind),
                   "serialized " + to_string(kind) + " indexes differ across runs");
    }
    return "graphs, summary dumps, and all three index files are bit-identical across runs";
}

struct Criterion {
    int number;
    const char* title;
    std::function<std::string()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "differential correctness", criterion_1},
        {2, "worked examples", criterion_2},
        {3, "dual-labeling link table", criterion_3},
        {4, "interval-label pruning", criterion_4},
        {5, "linear-size reduction", criterion_5},
        {6, "summary bound", criterion_6},
        {7, "desk-scale speedup", criterion_7},
        {8, "witness validity", criterion_8},
        {9, "determinism", criterion_9},
    };
    return all;
}

bool run_criterion(const Criterion& c) {
    try {
        const std::string detail = c.run();
        std::cout << "PASS criterion " << c.number << " (" << c.title << "): " << detail << "\n";
        return true;
    } catch (const Failure& f) {
        std::cout << "FAIL criterion " << c.number << " (" << c.title << "): " << f.detail << "\n";
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion " << c.number << " (" << c.title << "): unexpected error: "
                  << e.what() << "\n";
    }
    return false;
}

} // namespace

int main(int argc, char** argv) {
    const std::string selection = argc > 1 ? argv[1] : "all";
    bool all_passed = true;
    bool matched = false;
    for (const Criterion& c : criteria()) {
        if (selection != "all" && selection != std::to_string(c.number)) continue;
        matched = true;
        all_passed &= run_criterion(c);
    }
    if (!matched) {
        std::cerr << "usage: csreach_acceptance [1-9|all]\n";
        return 2;
    }
    return all_passed ? 0 : 1;
}
