#include "csreach/oracle.hpp"

#include <queue>

#include "csreach/errors.hpp"

namespace csreach {

ReachRelation::ReachRelation(std::uint32_t vertex_count,
                             std::vector<std::vector<std::uint64_t>> pair_bits)
    : vertex_count_(vertex_count),
      words_per_row_((vertex_count + 63) / 64),
      pair_bits_(std::move(pair_bits)) {
    if (pair_bits_.size() != 4)
        throw Error("ReachRelation needs the four grammar relations");
    for (const auto& bits : pair_bits_)
        if (bits.size() != static_cast<std::size_t>(vertex_count_) * words_per_row_)
            throw Error("ReachRelation bit matrix has the wrong shape");
}

bool ReachRelation::contains(NonTerminal nt, VertexId u, VertexId v) const {
    const auto& bits = pair_bits_[static_cast<std::size_t>(nt)];
    return (bits[static_cast<std::size_t>(u) * words_per_row_ + v / 64] >> (v % 64)) & 1;
}

std::vector<std::pair<VertexId, VertexId>> ReachRelation::pairs(NonTerminal nt) const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId u = 0; u < vertex_count_; ++u)
        for (VertexId v = 0; v < vertex_count_; ++v)
            if (contains(nt, u, v)) out.emplace_back(u, v);
    return out;
}

namespace {

// Worklist symbol ids: the public nonterminals first (matching NonTerminal),
// then E for eps edges, then an (O_i, C_i, T_i) triple per call site.
constexpr std::uint32_t kS = 0;
constexpr std::uint32_t kP = 1;
constexpr std::uint32_t kN = 2;
constexpr std::uint32_t kM = 3;
constexpr std::uint32_t kE = 4;

constexpr std::uint32_t sym_open(std::uint32_t site) { return 5 + 3 * (site - 1); }
constexpr std::uint32_t sym_close(std::uint32_t site) { return 6 + 3 * (site - 1); }
constexpr std::uint32_t sym_t(std::uint32_t site) { return 7 + 3 * (site - 1); }

struct Fact {
    std::uint32_t sym;
    VertexId u;
    VertexId v;
};

} // namespace

ReachRelation cfl_closure(const ProgramValidGraph& g, const OracleLimits& limits) {
    const std::uint32_t vcount = g.vertex_count();
    if (vcount > limits.max_vertices)
        throw GuardError("cfl_closure: " + std::to_string(vcount) + " vertices exceed limit " +
                         std::to_string(limits.max_vertices) + " (cubic saturation)");

    const std::uint32_t k = g.declared_k();
    const std::uint32_t symbols = 5 + 3 * k;
    const std::uint32_t words = (vcount + 63) / 64;

    // Binary rules A -> Y Z, indexed both ways for the worklist joins.
    struct HalfRule {
        std::uint32_t produced;
        std::uint32_t other;
    };
    std::vector<std::vector<HalfRule>> by_left(symbols), by_right(symbols);
    auto rule = [&](std::uint32_t a, std::uint32_t y, std::uint32_t z) {
        by_left[y].push_back({a, z});
        by_right[z].push_back({a, y});
    };
    rule(kS, kP, kN); // S -> P N
    rule(kP, kM, kP); // P -> M P
    rule(kN, kM, kN); // N -> M N
    rule(kM, kM, kM); // M -> M M
    for (std::uint32_t site = 1; site <= k; ++site) {
        rule(kP, sym_close(site), kP);          // P -> C_i P
        rule(kN, sym_open(site), kN);           // N -> O_i N
        rule(kM, sym_open(site), sym_t(site));  // M -> O_i T_i
        rule(sym_t(site), kM, sym_close(site)); // T_i -> M C_i
    }
    // Eps edges spell nothing: each public relation absorbs E on either side.
    for (std::uint32_t a : {kS, kP, kN, kM}) {
        rule(a, a, kE);
        rule(a, kE, a);
    }

    std::vector<std::vector<std::uint64_t>> bits(
        symbols, std::vector<std::uint64_t>(static_cast<std::size_t>(vcount) * words, 0));
    // fwd[sym][u] = targets v with sym(u,v); bwd[sym][v] = sources.
    std::vector<std::vector<std::vector<VertexId>>> fwd(
        symbols, std::vector<std::vector<VertexId>>(vcount));
    auto bwd = fwd;

    std::queue<Fact> work;
    auto add = [&](std::uint32_t sym, VertexId u, VertexId v) {
        std::uint64_t& word = bits[sym][static_cast<std::size_t>(u) * words + v / 64];
        const std::uint64_t mask = std::uint64_t{1} << (v % 64);
        if (word & mask) return;
        word |= mask;
        fwd[sym][u].push_back(v);
        bwd[sym][v].push_back(u);
        work.push({sym, u, v});
    };

    // Seeds: the nullable nonterminals reflexively, one terminal fact per edge.
    for (VertexId v = 0; v < vcount; ++v)
        for (std::uint32_t a : {kS, kP, kN, kM}) add(a, v, v);
    for (const Edge& e : g.edges()) {
        switch (e.label.kind) {
        case LabelKind::Eps: add(kE, e.src, e.dst); break;
        case LabelKind::Open: add(sym_open(e.label.site), e.src, e.dst); break;
        case LabelKind::Close: add(sym_close(e.label.site), e.src, e.dst); break;
        }
    }

    // FIFO saturation: join each popped fact with everything already recorded
    // on the matching side. Lists are indexed afresh each step because add()
    // may grow the very list being walked.
    while (!work.empty()) {
        const Fact f = work.front();
        work.pop();
        for (const HalfRule& r : by_left[f.sym]) {
            const std::size_t count = fwd[r.other][f.v].size();
            for (std::size_t i = 0; i < count; ++i) add(r.produced, f.u, fwd[r.other][f.v][i]);
        }
        for (const HalfRule& r : by_right[f.sym]) {
            const std::size_t count = bwd[r.other][f.u].size();
            for (std::size_t i = 0; i < count; ++i) add(r.produced, bwd[r.other][f.u][i], f.v);
        }
    }

    std::vector<std::vector<std::uint64_t>> relations;
    relations.reserve(4);
    for (std::uint32_t a : {kS, kP, kN, kM}) relations.push_back(std::move(bits[a]));
    return ReachRelation(vcount, std::move(relations));
}

bool tabulation_query(const ProgramValidGraph& g, const SummaryEdgeSet& summaries, VertexId s,
                      VertexId t) {
    if (s == t) return true;

    // Two visited sets, one per procedure; the "balanced" procedure (entered
    // after the first unmatched open) may not cross close edges any more.
    std::vector<bool> visited_free(g.vertex_count(), false);
    std::vector<bool> visited_balanced(g.vertex_count(), false);

    struct Frame {
        VertexId v;
        bool balanced;
    };
    std::vector<Frame> stack;
    stack.push_back({s, false});

    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.v == t) return true;
        std::vector<bool>& visited = f.balanced ? visited_balanced : visited_free;
        if (visited[f.v]) continue;
        visited[f.v] = true;

        for (const Edge& e : g.out_edges(f.v)) {
            if (e.label.is_open())
                stack.push_back({e.dst, true});
            else if (e.label.is_close()) {
                if (!f.balanced) stack.push_back({e.dst, false});
            } else
                stack.push_back({e.dst, f.balanced});
        }
        for (VertexId w : summaries.successors(f.v)) stack.push_back({w, f.balanced});
    }
    return false;
}

} // namespace csreach
