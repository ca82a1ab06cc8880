// csreach: reference solvers used to validate the fast query path.
//
// cfl_closure saturates the grammar relations over a (small) graph with a
// textbook CFL-reachability worklist and exposes the S/P/N/M pair sets; it is
// the ground truth everything else is tested against. tabulation_query is the
// demand-driven summary-based traversal: two visited-set procedures, one that
// may still cross unmatched return edges and one that may not, equivalent to
// the closure on program-valid graphs once summary edges are supplied.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "csreach/graph.hpp"
#include "csreach/grammar.hpp"
#include "csreach/summary.hpp"

namespace csreach {

struct OracleLimits {
    // The closure keeps O(k * V^2) pair sets; larger graphs throw GuardError.
    std::uint32_t max_vertices = 300;
};

// Saturated grammar relations. Pairs are reported sorted.
class ReachRelation {
public:
    ReachRelation(std::uint32_t vertex_count,
                  std::vector<std::vector<std::uint64_t>> pair_bits);

    bool contains(NonTerminal nt, VertexId u, VertexId v) const;
    std::vector<std::pair<VertexId, VertexId>> pairs(NonTerminal nt) const;
    std::uint32_t vertex_count() const { return vertex_count_; }

private:
    std::uint32_t vertex_count_;
    std::uint32_t words_per_row_;
    // pair_bits_[nt] is a vertex_count x vertex_count bit matrix.
    std::vector<std::vector<std::uint64_t>> pair_bits_;
};

// Saturates the grammar over g. Throws GuardError past limits.max_vertices.
ReachRelation cfl_closure(const ProgramValidGraph& g, const OracleLimits& limits = {});

// Demand query: true iff t is context-sensitively reachable from s, walking
// real and summary edges with the two-procedure visited-set traversal.
// Implemented with an explicit stack (semantics of the recursive form).
bool tabulation_query(const ProgramValidGraph& g, const SummaryEdgeSet& summaries,
                      VertexId s, VertexId t);

} // namespace csreach
