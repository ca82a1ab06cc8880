#include "csreach/summary.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "csreach/errors.hpp"

namespace csreach {

std::span<const VertexId> SummaryEdgeSet::successors(VertexId v) const {
    if (v >= vertex_count_) return {};
    return {succ_.data() + succ_begin_[v], succ_.data() + succ_begin_[v + 1]};
}

std::optional<SummaryEdge> SummaryEdgeSet::find(VertexId source, VertexId target) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(source, target),
                               [](const SummaryEdge& e, const std::pair<VertexId, VertexId>& key) {
                                   return std::make_pair(e.source, e.target) < key;
                               });
    if (it == edges_.end() || it->source != source || it->target != target) return std::nullopt;
    return *it;
}

namespace {

template <typename Link>
const Link* find_link(const std::vector<std::pair<VertexId, Link>>& links, VertexId v) {
    auto it = std::lower_bound(links.begin(), links.end(), v,
                               [](const auto& entry, VertexId key) { return entry.first < key; });
    if (it == links.end() || it->first != v) return nullptr;
    return &it->second;
}

} // namespace

bool SummaryEdgeSet::same_level(VertexId entry, VertexId exit) const {
    if (entry == exit) return true;
    if (entry >= vertex_count_ || exit >= vertex_count_) return false;
    std::int32_t idx = entry_index_[entry];
    if (idx < 0) return false;
    return find_link(witness_[idx], exit) != nullptr;
}

std::vector<SameLevelStep> SummaryEdgeSet::same_level_path(VertexId entry, VertexId exit) const {
    std::vector<SameLevelStep> steps;
    if (entry == exit) return steps;
    if (entry >= vertex_count_ || entry_index_[entry] < 0)
        throw Error("same_level_path: " + std::to_string(entry) + " is not a recorded entry");
    const auto& links = witness_[entry_index_[entry]];

    VertexId cur = exit;
    std::size_t budget = links.size() + 1;
    while (true) {
        const WitnessLink* link = find_link(links, cur);
        if (link == nullptr)
            throw Error("same_level_path: " + std::to_string(exit) +
                        " is not same-level reachable from " + std::to_string(entry));
        if (link->seed) break;
        steps.push_back({link->kind, link->prev, cur});
        cur = link->prev;
        if (--budget == 0) throw Error("same_level_path: witness links form a cycle");
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

SummaryEdgeSet compute_summaries(const ProgramValidGraph& g) {
    const std::uint32_t vcount = g.vertex_count();
    SummaryEdgeSet out;
    out.vertex_count_ = vcount;
    out.entry_index_.assign(vcount, -1);

    // Static per-vertex edge indexes, in canonical edge order.
    std::vector<std::vector<std::pair<VertexId, CallSiteId>>> open_in(vcount);  // entry -> (source, site)
    std::vector<std::vector<std::pair<VertexId, CallSiteId>>> close_out(vcount); // exit -> (target, site)
    std::vector<std::vector<VertexId>> eps_out(vcount);
    for (const Edge& e : g.edges()) {
        switch (e.label.kind) {
        case LabelKind::Eps: eps_out[e.src].push_back(e.dst); break;
        case LabelKind::Open: open_in[e.dst].emplace_back(e.src, e.label.site); break;
        case LabelKind::Close: close_out[e.src].emplace_back(e.dst, e.label.site); break;
        }
    }

    // Same-level entries are the heads of open edges.
    for (VertexId v = 0; v < vcount; ++v) {
        if (!open_in[v].empty()) {
            out.entry_index_[v] = static_cast<std::int32_t>(out.entry_vertex_.size());
            out.entry_vertex_.push_back(v);
        }
    }
    const std::size_t entries = out.entry_vertex_.size();

    // SL(e, v) facts: v is same-level reachable from entry e. The map per
    // entry doubles as the dedup set and the first-discovery witness record.
    std::vector<std::unordered_map<VertexId, SummaryEdgeSet::WitnessLink>> links(entries);
    std::vector<std::vector<std::uint32_t>> sl_sources(vcount); // v -> entries with SL(e, v)
    std::vector<std::vector<VertexId>> summary_succ(vcount);
    std::unordered_set<std::uint64_t> have_summary;
    std::queue<std::pair<std::uint32_t, VertexId>> work;

    auto add_fact = [&](std::uint32_t e, VertexId v, SummaryEdgeSet::WitnessLink link) {
        auto [it, inserted] = links[e].try_emplace(v, link);
        if (!inserted) return;
        sl_sources[v].push_back(e);
        work.push({e, v});
    };

    auto emit_summary = [&](VertexId source, VertexId target, CallSiteId site, VertexId entry_v,
                            VertexId exit_v) {
        const std::uint64_t key = static_cast<std::uint64_t>(source) * vcount + target;
        if (!have_summary.insert(key).second) return;
        out.edges_.push_back({source, target, site, entry_v, exit_v});
        summary_succ[source].push_back(target);
        // Facts already sitting on `source` must cross the new edge too.
        // Indexed loop: a self-loop summary can grow the list mid-walk.
        for (std::size_t i = 0; i < sl_sources[source].size(); ++i)
            add_fact(sl_sources[source][i], target,
                     {source, SameLevelStep::Kind::Summary, false});
    };

    for (std::uint32_t e = 0; e < entries; ++e)
        add_fact(e, out.entry_vertex_[e],
                 {out.entry_vertex_[e], SameLevelStep::Kind::Eps, true});

    while (!work.empty()) {
        const auto [e, v] = work.front();
        work.pop();

        // v may close a matched segment from this entry: every open edge into
        // the entry pairs with every same-site close edge out of v.
        if (!close_out[v].empty()) {
            const VertexId entry_v = out.entry_vertex_[e];
            for (const auto& [target, close_site] : close_out[v])
                for (const auto& [source, open_site] : open_in[entry_v])
                    if (open_site == close_site)
                        emit_summary(source, target, close_site, entry_v, v);
        }

        for (VertexId w : eps_out[v])
            add_fact(e, w, {v, SameLevelStep::Kind::Eps, false});
        for (std::size_t i = 0; i < summary_succ[v].size(); ++i)
            add_fact(e, summary_succ[v][i], {v, SameLevelStep::Kind::Summary, false});
    }

    // Freeze: canonical edge order, CSR successor index, sorted witness rows.
    std::sort(out.edges_.begin(), out.edges_.end(),
              [](const SummaryEdge& a, const SummaryEdge& b) {
                  return std::make_pair(a.source, a.target) < std::make_pair(b.source, b.target);
              });
    out.succ_begin_.assign(vcount + 1, 0);
    for (const SummaryEdge& e : out.edges_) ++out.succ_begin_[e.source + 1];
    for (std::uint32_t v = 0; v < vcount; ++v) out.succ_begin_[v + 1] += out.succ_begin_[v];
    out.succ_.reserve(out.edges_.size());
    for (const SummaryEdge& e : out.edges_) out.succ_.push_back(e.target);

    out.witness_.resize(entries);
    for (std::size_t e = 0; e < entries; ++e) {
        out.witness_[e].assign(links[e].begin(), links[e].end());
        std::sort(out.witness_[e].begin(), out.witness_[e].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return out;
}

} // namespace csreach
