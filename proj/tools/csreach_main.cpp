// csreach: single command-line binary over the toolkit.
//
// Subcommands: gen, validate, summarize, export-dot, oracle, build, query,
// bench. Exit codes: 0 success, 1 usage error, 2 input/validation error,
// 3 resource-guard error. Data goes to stdout, diagnostics to stderr.
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "csreach/bench.hpp"
#include "csreach/errors.hpp"
#include "csreach/gen.hpp"
#include "csreach/graph.hpp"
#include "csreach/oracle.hpp"
#include "csreach/scheme.hpp"
#include "csreach/session.hpp"
#include "csreach/summary.hpp"

namespace {

using namespace csreach;

// Non-error early exit with a specific code (validate on a bad graph).
struct ExitWith {
    int code;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << data;
    if (!out) throw Error("writing '" + path + "' failed");
}

ProgramValidGraph load_graph(const std::string& path) { return parse_graph(read_input(path)); }

std::vector<std::pair<VertexId, VertexId>> parse_pairs(const std::string& text) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::uint32_t u, v;
        if (!(fields >> u)) continue; // blank or comment-only line
        std::string extra;
        if (!(fields >> v) || (fields >> extra))
            throw Error("pairs line " + std::to_string(number) + ": expected 'u v'");
        pairs.emplace_back(u, v);
    }
    return pairs;
}

std::string label_token(const Label& label) {
    switch (label.kind) {
    case LabelKind::Eps: return "eps";
    case LabelKind::Open: return "open:" + std::to_string(label.site);
    case LabelKind::Close: return "close:" + std::to_string(label.site);
    }
    return "?";
}

// Shared index-tuning flags.
struct IndexFlags {
    BuildLimits limits;
    GrailParams grail;
    void attach(CLI::App* cmd) {
        cmd->add_option("--tc-limit", limits.tc_max_components,
                        "component guard for the tc scheme");
        cmd->add_option("--dual-limit", limits.dual_max_nontree_edges,
                        "non-tree edge guard for the dual scheme");
        cmd->add_option("--grail-k", grail.k_labels, "number of grail labelings");
        cmd->add_option("--grail-seed", grail.seed, "seed for the grail labelings");
    }
};

void cmd_gen(const GenParams& params, const std::string& out_path) {
    write_output(out_path, write_graph(generate(params)));
}

void cmd_validate(const std::string& graph_path) {
    const ProgramValidGraph g = load_graph(graph_path);
    const ValidationReport report = validate(g);
    std::cout << "graph: vertices=" << g.vertex_count() << " edges=" << g.edges().size()
              << " functions=" << g.function_count() << " k=" << g.declared_k()
              << " declared-alpha=" << g.declared_alpha() << "\n";
    std::cout << "measured-alpha: " << report.measured_alpha << "\n";
    for (const Violation& v : report.violations)
        std::cout << "violation " << v.rule << ": " << v.message << "\n";
    if (!report.ok) {
        std::cout << "invalid: " << report.violations.size() << " violation(s)\n";
        throw ExitWith{2};
    }
    std::cout << "valid\n";
}

void cmd_summarize(const std::string& graph_path) {
    const ProgramValidGraph g = load_graph(graph_path);
    const SummaryEdgeSet summaries = compute_summaries(g);
    std::ostringstream out;
    for (const SummaryEdge& e : summaries.edges())
        out << e.source << " " << e.target << " " << e.site << "\n";
    std::cout << out.str();
}

void cmd_export_dot(const std::string& graph_path) {
    const ProgramValidGraph g = load_graph(graph_path);
    const SummaryEdgeSet summaries = compute_summaries(g);
    const IndexingGraphView view(g, summaries);

    auto name = [](IndexVertex iv) {
        return "\"" + std::to_string(iv.vertex) + ":" +
               (iv.side == Side::One ? std::string("1") : std::string("2")) + "\"";
    };
    std::ostringstream out;
    out << "digraph indexing {\n";
    for (std::uint32_t code = 0; code < view.index_vertex_count(); ++code)
        out << "  " << name(IndexVertex::decode(code)) << ";\n";
    for (std::uint32_t code = 0; code < view.index_vertex_count(); ++code) {
        const IndexVertex iv = IndexVertex::decode(code);
        view.for_each_successor(iv, [&](const IndexEdge& e) {
            out << "  " << name(iv) << " -> " << name(e.to) << " [label=\"";
            switch (e.kind) {
            case IndexEdgeKind::Bridge: out << "bridge"; break;
            case IndexEdgeKind::Eps: out << "eps"; break;
            case IndexEdgeKind::Open: out << "open " << e.aux; break;
            case IndexEdgeKind::Close: out << "close " << e.aux; break;
            case IndexEdgeKind::Summary: out << "summary"; break;
            }
            out << "\"];\n";
        });
    }
    out << "}\n";
    std::cout << out.str();
}

void cmd_oracle(const std::string& graph_path, std::uint32_t limit) {
    const ProgramValidGraph g = load_graph(graph_path);
    const ReachRelation relation = cfl_closure(g, OracleLimits{limit});
    std::ostringstream out;
    for (const auto& [u, v] : relation.pairs(NonTerminal::S)) out << u << " " << v << "\n";
    std::cout << out.str();
}

void cmd_build(const std::string& graph_path, const std::string& scheme_name,
               const std::string& out_path, const IndexFlags& flags) {
    const ProgramValidGraph g = load_graph(graph_path);
    const SummaryEdgeSet summaries = compute_summaries(g);
    const IndexingGraphView view(g, summaries);
    const Condensation cond(view);
    const ReachScheme scheme =
        ReachScheme::build(parse_scheme(scheme_name), cond.dag(), flags.limits, flags.grail);

    std::ostringstream payload;
    scheme.save(payload, fnv1a64(write_graph(g)));
    write_output(out_path, payload.str());
    std::cerr << "built " << scheme_name << " index: components=" << scheme.component_count()
              << " bytes=" << scheme.byte_size() << "\n";
}

void cmd_query(const std::string& graph_path, const std::string& scheme_name,
               const std::string& index_path, const std::string& pairs_path,
               const std::vector<std::uint32_t>& pair_args, bool paths, const IndexFlags& flags) {
    ProgramValidGraph g = load_graph(graph_path);

    std::unique_ptr<QuerySession> session;
    if (!index_path.empty()) {
        const std::string bytes = read_input(index_path);
        std::istringstream in(bytes);
        ReachScheme scheme = ReachScheme::load(in, fnv1a64(write_graph(g)));
        session = std::make_unique<QuerySession>(std::move(g), std::move(scheme));
    } else {
        session = std::make_unique<QuerySession>(std::move(g), parse_scheme(scheme_name),
                                                 flags.limits, flags.grail);
    }

    std::vector<std::pair<VertexId, VertexId>> pairs;
    if (!pair_args.empty()) pairs.emplace_back(pair_args[0], pair_args[1]);
    if (!pairs_path.empty()) {
        const auto more = parse_pairs(read_input(pairs_path));
        pairs.insert(pairs.end(), more.begin(), more.end());
    }

    std::ostringstream out;
    for (const auto& [u, v] : pairs) {
        if (paths) {
            const auto witness = session->cs_query_path(u, v);
            if (!witness) {
                out << u << " " << v << " 0\n";
                continue;
            }
            out << u << " " << v << " 1";
            out << " " << witness->vertices[0];
            for (std::size_t i = 0; i < witness->labels.size(); ++i)
                out << " " << label_token(witness->labels[i]) << " " << witness->vertices[i + 1];
            out << "\n";
        } else {
            out << u << " " << v << " " << (session->cs_query(u, v) ? 1 : 0) << "\n";
        }
    }
    std::cout << out.str();
}

void cmd_bench(const std::string& graph_path, BenchOptions options,
               const std::vector<std::string>& scheme_names, const std::string& csv_path) {
    const ProgramValidGraph g = load_graph(graph_path);
    for (const std::string& name : scheme_names) {
        if (name == "none") continue;
        options.schemes.push_back(parse_scheme(name));
    }
    if (options.graph_name.empty()) {
        const auto slash = graph_path.find_last_of('/');
        options.graph_name = slash == std::string::npos ? graph_path : graph_path.substr(slash + 1);
    }

    const BenchReport report = run_bench(g, options);
    for (const std::string& warning : report.warnings)
        std::cerr << "warning: " << warning << "\n";

    if (!csv_path.empty()) {
        write_output(csv_path, to_csv(report));
        return;
    }
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const BenchRow& row : report.rows)
        out << "scheme=" << row.scheme << " class=" << row.query_class << " n=" << row.n
            << " total_ms=" << row.total_ms << " speedup=" << row.speedup_vs_tabulation
            << " build_ms=" << row.build_ms << " index_bytes=" << row.index_bytes << "\n";
    std::cout << out.str();
}

int run(int argc, char** argv) {
    CLI::App app{"context-sensitive reachability over program-valid graphs"};
    app.set_version_flag("--version", "csreach 1.0.0 (pvg format 1, index format " +
                                          std::to_string(ReachScheme::kFormatVersion) + ")");
    app.require_subcommand(1);

    // gen
    auto gen_params = std::make_shared<GenParams>();
    auto gen_out = std::make_shared<std::string>("-");
    CLI::App* gen = app.add_subcommand("gen", "generate a program-valid graph");
    gen->add_option("--functions", gen_params->functions, "number of functions");
    gen->add_option("--vmin", gen_params->vertices_per_function_min, "min vertices per function");
    gen->add_option("--vmax", gen_params->vertices_per_function_max, "max vertices per function");
    gen->add_option("--density", gen_params->eps_edge_density, "eps edges per vertex");
    gen->add_option("--sites", gen_params->call_sites, "number of call sites");
    gen->add_option("--alpha", gen_params->alpha, "boundary vertices per function");
    gen->add_option("--seed", gen_params->seed, "generator seed");
    gen->add_flag("--recursion", gen_params->allow_recursion, "allow recursive call sites");
    gen->add_option("-o,--output", *gen_out, "output file ('-' = stdout)");
    gen->callback([gen_params, gen_out] { cmd_gen(*gen_params, *gen_out); });

    // validate
    auto validate_graph = std::make_shared<std::string>();
    CLI::App* val = app.add_subcommand("validate", "check the program-valid rules");
    val->add_option("graph", *validate_graph, "graph file ('-' = stdin)")->required();
    val->callback([validate_graph] { cmd_validate(*validate_graph); });

    // summarize
    auto summarize_graph = std::make_shared<std::string>();
    CLI::App* sum = app.add_subcommand("summarize", "dump summary edges as 'source target site'");
    sum->add_option("graph", *summarize_graph, "graph file ('-' = stdin)")->required();
    sum->callback([summarize_graph] { cmd_summarize(*summarize_graph); });

    // export-dot
    auto dot_graph = std::make_shared<std::string>();
    CLI::App* dot = app.add_subcommand("export-dot", "dump the indexing graph as DOT");
    dot->add_option("graph", *dot_graph, "graph file ('-' = stdin)")->required();
    dot->callback([dot_graph] { cmd_export_dot(*dot_graph); });

    // oracle
    auto oracle_graph = std::make_shared<std::string>();
    auto oracle_limit = std::make_shared<std::uint32_t>(OracleLimits{}.max_vertices);
    CLI::App* orc = app.add_subcommand("oracle", "dump the saturated S-relation as 'u v'");
    orc->add_option("graph", *oracle_graph, "graph file ('-' = stdin)")->required();
    orc->add_option("--limit", *oracle_limit, "vertex guard for the cubic saturation");
    orc->callback([oracle_graph, oracle_limit] { cmd_oracle(*oracle_graph, *oracle_limit); });

    // build
    auto build_graph = std::make_shared<std::string>();
    auto build_scheme = std::make_shared<std::string>();
    auto build_out = std::make_shared<std::string>();
    auto build_flags = std::make_shared<IndexFlags>();
    CLI::App* bld = app.add_subcommand("build", "build and save a reachability index");
    bld->add_option("graph", *build_graph, "graph file ('-' = stdin)")->required();
    bld->add_option("--scheme", *build_scheme, "tc, dual, or grail")->required();
    bld->add_option("-o,--output", *build_out, "index output file")->required();
    build_flags->attach(bld);
    bld->callback([build_graph, build_scheme, build_out, build_flags] {
        cmd_build(*build_graph, *build_scheme, *build_out, *build_flags);
    });

    // query
    auto query_graph = std::make_shared<std::string>();
    auto query_scheme = std::make_shared<std::string>("grail");
    auto query_index = std::make_shared<std::string>();
    auto query_pairs_path = std::make_shared<std::string>();
    auto query_pair_args = std::make_shared<std::vector<std::uint32_t>>();
    auto query_paths = std::make_shared<bool>(false);
    auto query_flags = std::make_shared<IndexFlags>();
    CLI::App* qry = app.add_subcommand("query", "answer reachability queries");
    qry->add_option("graph", *query_graph, "graph file")->required();
    qry->add_option("pair", *query_pair_args, "one query as two vertex ids")->expected(0, 2);
    qry->add_option("--scheme", *query_scheme, "index scheme to build (default grail)");
    qry->add_option("--index", *query_index, "load a saved index instead of building");
    qry->add_option("--pairs", *query_pairs_path, "file of 'u v' lines ('-' = stdin)");
    qry->add_flag("--paths", *query_paths, "emit witness paths for reachable pairs");
    query_flags->attach(qry);
    qry->callback([query_graph, query_scheme, query_index, query_pairs_path, query_pair_args,
                   query_paths, query_flags] {
        if (query_pair_args->size() == 1)
            throw CLI::ValidationError("pair", "needs two vertex ids");
        if (query_pair_args->empty() && query_pairs_path->empty())
            throw CLI::ValidationError("pair", "give 'u v' or --pairs");
        cmd_query(*query_graph, *query_scheme, *query_index, *query_pairs_path, *query_pair_args,
                  *query_paths, *query_flags);
    });

    // bench
    auto bench_graph = std::make_shared<std::string>();
    auto bench_options = std::make_shared<BenchOptions>();
    bench_options->graph_name.clear(); // default to the input file's basename
    auto bench_schemes =
        std::make_shared<std::vector<std::string>>(std::vector<std::string>{"tc", "dual", "grail"});
    auto bench_csv = std::make_shared<std::string>();
    CLI::App* ben = app.add_subcommand("bench", "time query batches against tabulation");
    ben->add_option("graph", *bench_graph, "graph file ('-' = stdin)")->required();
    ben->add_option("--schemes", *bench_schemes, "schemes to time (or 'none')")
        ->delimiter(',');
    ben->add_option("--reachable", bench_options->n_reachable, "reachable batch size");
    ben->add_option("--unreachable", bench_options->n_unreachable, "unreachable batch size");
    ben->add_option("--repeats", bench_options->repeats, "timing repeats (median)");
    ben->add_option("--seed", bench_options->seed, "sampling seed");
    ben->add_option("--budget", bench_options->sample_budget,
                    "sampling attempt budget (0 = default)");
    ben->add_option("--name", bench_options->graph_name, "graph name for the report");
    ben->add_option("--csv", *bench_csv, "write CSV to this file ('-' = stdout)");
    ben->add_option("--tc-limit", bench_options->limits.tc_max_components,
                    "component guard for the tc scheme");
    ben->add_option("--dual-limit", bench_options->limits.dual_max_nontree_edges,
                    "non-tree edge guard for the dual scheme");
    ben->add_option("--grail-k", bench_options->grail.k_labels, "number of grail labelings");
    ben->add_option("--grail-seed", bench_options->grail.seed, "seed for the grail labelings");
    ben->callback([bench_graph, bench_options, bench_schemes, bench_csv] {
        cmd_bench(*bench_graph, *bench_options, *bench_schemes, *bench_csv);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const GuardError& e) {
        std::cerr << "csreach: " << e.what() << "\n"
                  << "hint: raise the relevant limit flag or pick a lighter scheme\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "csreach: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "csreach: internal error: " << e.what() << "\n";
        return 2;
    }
}
