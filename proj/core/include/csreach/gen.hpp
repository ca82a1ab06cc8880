// csreach: seeded generator of program-valid graphs.
//
// Each function gets a uniform vertex count and random intra-function eps
// edges (cycles allowed). Call sites are laid over a function-level DAG
// unless recursion is enabled, in which case back edges (including self
// calls) are sampled with probability 0.1. Every call site has a unique id
// and at most alpha open edges into its callee's designated boundary
// vertices and at most alpha close edges out of them, so generated graphs
// always validate within the declared alpha.
#pragma once

#include <cstdint>

#include "csreach/graph.hpp"

namespace csreach {

struct GenParams {
    std::uint32_t functions = 4;
    std::uint32_t vertices_per_function_min = 5;
    std::uint32_t vertices_per_function_max = 10;
    double eps_edge_density = 1.0; // eps edges per vertex within a function
    std::uint32_t call_sites = 3;
    std::uint32_t alpha = 2;
    std::uint64_t seed = 1;
    bool allow_recursion = false;
};

// Deterministic for a given params value. Throws ParamError on infeasible
// parameters (zero functions or vertices, min > max, alpha == 0 with call
// sites, or call sites without a possible callee).
ProgramValidGraph generate(const GenParams& params);

} // namespace csreach
