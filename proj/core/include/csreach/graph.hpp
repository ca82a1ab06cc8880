// csreach: the program-valid labeled multigraph and its text format.
//
// A program-valid graph is a digraph over dense 0-based vertex ids, each
// vertex assigned to a function, with edges labeled over the parenthesis
// alphabet (see label.hpp). Structural rules are enforced at construction:
// ids in range, every vertex mapped to a function, function ids dense,
// parallel edges only with distinct labels, self-loops only with eps labels,
// sites within 1..declared_k. Semantic rules (eps edges intra-function,
// boundary-vertex bound alpha) are checked separately by validate(), which
// reports violations instead of throwing.
//
// File format ("pvg"): UTF-8, line oriented, '#' starts a comment.
//
//   pvg 1
//   vertices <N>
//   k <K>
//   alpha <A>
//   func <vertex> <function>     (one line per vertex)
//   edge <src> <dst> eps
//   edge <src> <dst> open <site>
//   edge <src> <dst> close <site>
//
// The canonical form orders func lines by vertex id and edge lines by
// (src, dst, label); write_graph always emits it, and parse/write round-trips
// any valid file onto it.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csreach/label.hpp"

namespace csreach {

struct Edge {
    VertexId src = 0;
    VertexId dst = 0;
    Label label;

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.src == b.src && a.dst == b.dst && a.label == b.label;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.dst != b.dst) return a.dst < b.dst;
        return a.label < b.label;
    }
};

class ProgramValidGraph {
public:
    // Validates structure (throws StructureError), sorts edges into canonical
    // order, and builds the out-adjacency index.
    ProgramValidGraph(std::uint32_t vertex_count, std::uint32_t declared_k,
                      std::uint32_t declared_alpha, std::vector<FunctionId> func_of,
                      std::vector<Edge> edges);

    std::uint32_t vertex_count() const { return vertex_count_; }
    std::uint32_t declared_k() const { return declared_k_; }
    std::uint32_t declared_alpha() const { return declared_alpha_; }
    std::uint32_t function_count() const { return function_count_; }

    FunctionId func_of(VertexId v) const { return func_of_[v]; }
    const std::vector<FunctionId>& func_map() const { return func_of_; }

    // All edges in canonical (src, dst, label) order.
    const std::vector<Edge>& edges() const { return edges_; }

    // Out-edges of v, in canonical order.
    std::span<const Edge> out_edges(VertexId v) const {
        return {edges_.data() + out_begin_[v], edges_.data() + out_begin_[v + 1]};
    }

private:
    std::uint32_t vertex_count_;
    std::uint32_t declared_k_;
    std::uint32_t declared_alpha_;
    std::uint32_t function_count_;
    std::vector<FunctionId> func_of_;
    std::vector<Edge> edges_;               // canonical order
    std::vector<std::uint32_t> out_begin_;  // CSR offsets into edges_
};

struct Violation {
    std::string rule;    // stable rule id, e.g. "eps-intra-function", "alpha-bound"
    std::string message; // human-readable description naming the offending edge/function
};

struct ValidationReport {
    bool ok = true; // true iff violations is empty
    std::vector<Violation> violations;
    std::uint32_t measured_alpha = 0; // max boundary vertices over all functions
};

// Checks the program-valid rules: every eps edge stays within one function,
// and each function has at most declared_alpha boundary vertices (vertices
// with an open-labeled incoming edge or a close-labeled outgoing edge).
ValidationReport validate(const ProgramValidGraph& g);

// The edge multiset partitioned by label kind, each part in canonical order.
struct EdgePartition {
    std::vector<Edge> eps;
    std::vector<Edge> open;
    std::vector<Edge> close;
};

EdgePartition edge_sets(const ProgramValidGraph& g);

// Parses the text format; throws ParseError with the offending 1-based line
// number on malformed input, StructureError-grade problems included (they are
// reported as ParseError so the line is named).
ProgramValidGraph parse_graph(std::string_view text);

// Emits the canonical text form.
std::string write_graph(const ProgramValidGraph& g);

} // namespace csreach
