#include "csreach/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "csreach/errors.hpp"

namespace csreach {

std::string to_string(const Label& label) {
    switch (label.kind) {
    case LabelKind::Eps:
        return "eps";
    case LabelKind::Open:
        return "open " + std::to_string(label.site);
    case LabelKind::Close:
        return "close " + std::to_string(label.site);
    }
    return "?";
}

namespace {

std::string edge_name(const Edge& e) {
    return "(" + std::to_string(e.src) + " -> " + std::to_string(e.dst) + " " +
           to_string(e.label) + ")";
}

// Shared structural checks; `fail` reports with whatever context the caller
// has (line numbers for the parser, plain messages for the constructor).
template <typename Fail>
void check_edge(const Edge& e, std::uint32_t vertex_count, std::uint32_t k, Fail&& fail) {
    if (e.src >= vertex_count) fail("edge source " + std::to_string(e.src) + " out of range");
    if (e.dst >= vertex_count) fail("edge target " + std::to_string(e.dst) + " out of range");
    if (e.label.is_eps()) {
        if (e.label.site != 0) fail("eps label carries a site id");
    } else {
        if (e.label.site < 1 || e.label.site > k)
            fail("site " + std::to_string(e.label.site) + " outside 1.." + std::to_string(k));
        if (e.src == e.dst) fail("self-loop " + edge_name(e) + " must be eps-labeled");
    }
}

} // namespace

ProgramValidGraph::ProgramValidGraph(std::uint32_t vertex_count, std::uint32_t declared_k,
                                     std::uint32_t declared_alpha,
                                     std::vector<FunctionId> func_of, std::vector<Edge> edges)
    : vertex_count_(vertex_count),
      declared_k_(declared_k),
      declared_alpha_(declared_alpha),
      function_count_(0),
      func_of_(std::move(func_of)),
      edges_(std::move(edges)) {
    if (func_of_.size() != vertex_count_)
        throw StructureError("function map covers " + std::to_string(func_of_.size()) +
                             " vertices, graph has " + std::to_string(vertex_count_));

    // Function ids must be dense: 0..F-1 all present.
    for (FunctionId f : func_of_)
        function_count_ = std::max(function_count_, f + 1);
    std::vector<bool> seen(function_count_, false);
    for (FunctionId f : func_of_) seen[f] = true;
    for (std::uint32_t f = 0; f < function_count_; ++f)
        if (!seen[f])
            throw StructureError("function ids not dense: " + std::to_string(f) + " unused");

    for (const Edge& e : edges_)
        check_edge(e, vertex_count_, declared_k_,
                   [](const std::string& msg) { throw StructureError(msg); });

    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] == edges_[i - 1])
            throw StructureError("duplicate edge " + edge_name(edges_[i]));

    out_begin_.assign(vertex_count_ + 1, 0);
    for (const Edge& e : edges_) ++out_begin_[e.src + 1];
    for (std::uint32_t v = 0; v < vertex_count_; ++v) out_begin_[v + 1] += out_begin_[v];
}

ValidationReport validate(const ProgramValidGraph& g) {
    ValidationReport report;

    // A boundary vertex has an open-labeled incoming edge or a close-labeled
    // outgoing edge; count them per function.
    std::vector<bool> boundary(g.vertex_count(), false);
    for (const Edge& e : g.edges()) {
        if (e.label.is_open()) boundary[e.dst] = true;
        if (e.label.is_close()) boundary[e.src] = true;
        if (e.label.is_eps() && g.func_of(e.src) != g.func_of(e.dst)) {
            report.violations.push_back(
                {"eps-intra-function",
                 "eps edge " + edge_name(e) + " crosses functions " +
                     std::to_string(g.func_of(e.src)) + " and " + std::to_string(g.func_of(e.dst))});
        }
    }

    std::vector<std::uint32_t> per_function(g.function_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (boundary[v]) ++per_function[g.func_of(v)];
    for (std::uint32_t f = 0; f < g.function_count(); ++f)
        report.measured_alpha = std::max(report.measured_alpha, per_function[f]);

    if (report.measured_alpha > g.declared_alpha()) {
        report.violations.push_back(
            {"alpha-bound", "measured alpha " + std::to_string(report.measured_alpha) +
                                " exceeds declared alpha " + std::to_string(g.declared_alpha())});
    }

    report.ok = report.violations.empty();
    return report;
}

EdgePartition edge_sets(const ProgramValidGraph& g) {
    EdgePartition parts;
    for (const Edge& e : g.edges()) {
        switch (e.label.kind) {
        case LabelKind::Eps: parts.eps.push_back(e); break;
        case LabelKind::Open: parts.open.push_back(e); break;
        case LabelKind::Close: parts.close.push_back(e); break;
        }
    }
    return parts;
}

// ------------------------------------------------------------ text format --

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::uint32_t parse_u32(const std::string& token, std::size_t line, const char* what) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line, std::string("invalid ") + what + " '" + token + "'");
    return value;
}

} // namespace

ProgramValidGraph parse_graph(std::string_view text) {
    // Tokenize, dropping comments and blank lines but keeping line numbers.
    std::vector<Line> lines;
    {
        std::size_t number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view raw =
                text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            ++number;
            pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

            if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            std::istringstream split{std::string(raw)};
            Line line{number, {}};
            for (std::string tok; split >> tok;) line.tokens.push_back(tok);
            if (!line.tokens.empty()) lines.push_back(std::move(line));
        }
    }

    if (lines.empty()) throw ParseError(1, "empty graph file (missing 'pvg 1' header)");

    auto expect_arity = [](const Line& line, std::size_t n, const char* form) {
        if (line.tokens.size() != n)
            throw ParseError(line.number, std::string("expected '") + form + "'");
    };

    // Magic line first.
    if (lines[0].tokens[0] != "pvg")
        throw ParseError(lines[0].number, "expected 'pvg 1' header");
    expect_arity(lines[0], 2, "pvg 1");
    if (lines[0].tokens[1] != "1")
        throw ParseError(lines[0].number, "unsupported format version '" + lines[0].tokens[1] + "'");

    // Remaining header directives, each exactly once, before any func/edge.
    bool have_vertices = false, have_k = false, have_alpha = false;
    std::uint32_t vertex_count = 0, k = 0, alpha = 0;

    std::vector<std::int64_t> func_of; // -1 = unset
    std::vector<std::pair<Edge, std::size_t>> edges_with_lines;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& head = line.tokens[0];

        if (head == "vertices" || head == "k" || head == "alpha") {
            expect_arity(line, 2, (head + " <n>").c_str());
            bool& have = head == "vertices" ? have_vertices : head == "k" ? have_k : have_alpha;
            if (have) throw ParseError(line.number, "duplicate '" + head + "' directive");
            if (!func_of.empty() || !edges_with_lines.empty())
                throw ParseError(line.number, "'" + head + "' must precede func/edge lines");
            std::uint32_t value = parse_u32(line.tokens[1], line.number, head.c_str());
            (head == "vertices" ? vertex_count : head == "k" ? k : alpha) = value;
            have = true;
            continue;
        }

        if (!have_vertices || !have_k || !have_alpha)
            throw ParseError(line.number, "func/edge line before complete header");

        if (head == "func") {
            if (func_of.empty()) func_of.assign(vertex_count, -1);
            expect_arity(line, 3, "func <vertex> <function>");
            std::uint32_t v = parse_u32(line.tokens[1], line.number, "vertex id");
            std::uint32_t f = parse_u32(line.tokens[2], line.number, "function id");
            if (v >= vertex_count)
                throw ParseError(line.number, "vertex " + std::to_string(v) + " out of range");
            if (func_of[v] != -1)
                throw ParseError(line.number, "duplicate func line for vertex " + std::to_string(v));
            func_of[v] = f;
        } else if (head == "edge") {
            if (line.tokens.size() != 4 && line.tokens.size() != 5)
                throw ParseError(line.number, "expected 'edge <src> <dst> <label>'");
            Edge e;
            e.src = parse_u32(line.tokens[1], line.number, "edge source");
            e.dst = parse_u32(line.tokens[2], line.number, "edge target");
            const std::string& kind = line.tokens[3];
            if (kind == "eps") {
                expect_arity(line, 4, "edge <src> <dst> eps");
                e.label = Label::eps();
            } else if (kind == "open" || kind == "close") {
                expect_arity(line, 5, ("edge <src> <dst> " + kind + " <site>").c_str());
                std::uint32_t site = parse_u32(line.tokens[4], line.number, "site id");
                e.label = kind == "open" ? Label::open(site) : Label::close(site);
            } else {
                throw ParseError(line.number, "unknown edge label '" + kind + "'");
            }
            check_edge(e, vertex_count, k,
                       [&](const std::string& msg) { throw ParseError(line.number, msg); });
            edges_with_lines.emplace_back(e, line.number);
        } else {
            throw ParseError(line.number, "unknown directive '" + head + "'");
        }
    }

    if (!have_vertices || !have_k || !have_alpha)
        throw ParseError(lines.back().number, "incomplete header (vertices/k/alpha required)");

    if (func_of.empty()) func_of.assign(vertex_count, -1);
    for (std::uint32_t v = 0; v < vertex_count; ++v)
        if (func_of[v] == -1)
            throw ParseError(lines.back().number,
                             "missing func line for vertex " + std::to_string(v));

    // Duplicate edges are caught here so the error can name the line.
    {
        auto sorted = edges_with_lines;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i].first == sorted[i - 1].first)
                throw ParseError(sorted[i].second,
                                 "duplicate edge " + edge_name(sorted[i].first));
    }

    std::vector<FunctionId> funcs(func_of.begin(), func_of.end());
    std::vector<Edge> edges;
    edges.reserve(edges_with_lines.size());
    for (const auto& [e, _] : edges_with_lines) edges.push_back(e);

    try {
        return ProgramValidGraph(vertex_count, k, alpha, std::move(funcs), std::move(edges));
    } catch (const StructureError& err) {
        // Anything the line-level checks could not attribute (dense function
        // ids, say) is still a parse failure of this file.
        throw ParseError(lines.back().number, err.what());
    }
}

std::string write_graph(const ProgramValidGraph& g) {
    std::string out;
    out += "pvg 1\n";
    out += "vertices " + std::to_string(g.vertex_count()) + "\n";
    out += "k " + std::to_string(g.declared_k()) + "\n";
    out += "alpha " + std::to_string(g.declared_alpha()) + "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        out += "func " + std::to_string(v) + " " + std::to_string(g.func_of(v)) + "\n";
    for (const Edge& e : g.edges()) {
        out += "edge " + std::to_string(e.src) + " " + std::to_string(e.dst) + " " +
               to_string(e.label) + "\n";
    }
    return out;
}

} // namespace csreach
