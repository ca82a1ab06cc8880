#include "csreach/gen.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "csreach/errors.hpp"
#include "csreach/rng.hpp"

namespace csreach {

ProgramValidGraph generate(const GenParams& p) {
    if (p.functions == 0) throw ParamError("gen: at least one function is required");
    if (p.vertices_per_function_min == 0)
        throw ParamError("gen: functions need at least one vertex");
    if (p.vertices_per_function_min > p.vertices_per_function_max)
        throw ParamError("gen: vertex range is empty (min > max)");
    if (!(p.eps_edge_density >= 0.0))
        throw ParamError("gen: eps edge density must be non-negative");
    if (p.call_sites > 0 && p.alpha == 0)
        throw ParamError("gen: call sites need alpha >= 1 boundary vertices");
    if (p.call_sites > 0 && p.functions < 2 && !p.allow_recursion)
        throw ParamError("gen: call sites need a callee (two functions, or recursion)");

    Rng rng(p.seed);

    // Function sizes and contiguous vertex ranges.
    std::vector<std::uint32_t> size(p.functions), base(p.functions);
    std::uint32_t vertex_count = 0;
    for (std::uint32_t f = 0; f < p.functions; ++f) {
        size[f] = static_cast<std::uint32_t>(
            rng.next_range(p.vertices_per_function_min, p.vertices_per_function_max));
        base[f] = vertex_count;
        vertex_count += size[f];
    }
    std::vector<FunctionId> func_of(vertex_count);
    for (std::uint32_t f = 0; f < p.functions; ++f)
        for (std::uint32_t i = 0; i < size[f]; ++i) func_of[base[f] + i] = f;

    // Intra-function eps edges; collisions are simply dropped, so the density
    // is a target, not a promise. Self-loops are allowed.
    std::set<std::pair<VertexId, VertexId>> eps_edges;
    for (std::uint32_t f = 0; f < p.functions; ++f) {
        const auto target = static_cast<std::uint32_t>(
            std::llround(p.eps_edge_density * static_cast<double>(size[f])));
        for (std::uint32_t i = 0; i < target; ++i) {
            const VertexId src = base[f] + static_cast<VertexId>(rng.next_below(size[f]));
            const VertexId dst = base[f] + static_cast<VertexId>(rng.next_below(size[f]));
            eps_edges.insert({src, dst});
        }
    }

    std::vector<Edge> edges;
    edges.reserve(eps_edges.size());
    for (const auto& [src, dst] : eps_edges) edges.push_back({src, dst, Label::eps()});

    // Call sites. Only the callee's first min(alpha, size) vertices ever
    // receive open edges or emit close edges, so each function's boundary
    // stays within alpha no matter how often it is called.
    for (CallSiteId site = 1; site <= p.call_sites; ++site) {
        bool back_call = p.allow_recursion && rng.next_bool(0.1);
        if (p.functions == 1) back_call = true;

        std::uint32_t caller, callee;
        if (back_call) {
            caller = static_cast<std::uint32_t>(rng.next_below(p.functions));
            callee = static_cast<std::uint32_t>(rng.next_below(caller + 1));
        } else {
            caller = static_cast<std::uint32_t>(rng.next_below(p.functions - 1));
            callee = caller + 1 +
                     static_cast<std::uint32_t>(rng.next_below(p.functions - 1 - caller));
        }

        const std::uint32_t boundary = std::min(p.alpha, size[callee]);
        std::vector<VertexId> designated(boundary);
        for (std::uint32_t i = 0; i < boundary; ++i) designated[i] = base[callee] + i;

        const auto pick_boundary = [&]() {
            const auto n = static_cast<std::uint32_t>(rng.next_range(1, boundary));
            std::vector<VertexId> chosen = designated;
            rng.shuffle(chosen);
            chosen.resize(n);
            return chosen;
        };
        std::vector<VertexId> entries = pick_boundary();
        std::vector<VertexId> exits = pick_boundary();

        // The caller-side endpoint must not coincide with a callee-side one
        // on a self call (non-eps self-loops are illegal); shrink the callee
        // set until a distinct endpoint exists, dropping the site's edges in
        // the degenerate single-vertex case.
        const auto pick_caller_end = [&](std::vector<VertexId>& callee_side) {
            std::vector<VertexId> candidates;
            for (;;) {
                candidates.clear();
                for (std::uint32_t i = 0; i < size[caller]; ++i) {
                    const VertexId v = base[caller] + i;
                    if (caller == callee &&
                        std::find(callee_side.begin(), callee_side.end(), v) != callee_side.end())
                        continue;
                    candidates.push_back(v);
                }
                if (!candidates.empty() || callee_side.empty()) break;
                callee_side.pop_back();
            }
            if (candidates.empty()) return std::optional<VertexId>{};
            return std::optional<VertexId>{
                candidates[rng.next_below(candidates.size())]};
        };

        if (const auto source = pick_caller_end(entries); source)
            for (VertexId entry : entries) edges.push_back({*source, entry, Label::open(site)});
        if (const auto target = pick_caller_end(exits); target)
            for (VertexId exit : exits) edges.push_back({exit, *target, Label::close(site)});
    }

    return ProgramValidGraph(vertex_count, p.call_sites, p.alpha, std::move(func_of),
                             std::move(edges));
}

} // namespace csreach
