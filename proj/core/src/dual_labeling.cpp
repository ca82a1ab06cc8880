#include "csreach/reach_index.hpp"

#include <algorithm>
#include <unordered_set>

#include "csreach/errors.hpp"

namespace csreach {

DualLabelingIndex DualLabelingIndex::build(const CondensedDag& dag, const BuildLimits& limits) {
    const ComponentId n = dag.component_count();
    DualLabelingIndex idx;
    idx.intervals_.assign(n, {});
    idx.parent_.assign(n, kNoParent);

    // First-visit DFS forest. Roots are tried in descending id order so
    // sources (high ids) claim their descendants as tree children, keeping
    // the non-tree remainder small. Ranks are global 1-based post-orders.
    std::vector<bool> visited(n, false);
    std::vector<std::uint32_t> pending_low(n, 0xffffffffu);
    struct Frame {
        ComponentId c;
        std::uint32_t i;
    };
    std::vector<Frame> stack;
    std::uint32_t next_rank = 1;

    for (ComponentId root = n; root-- > 0;) {
        if (visited[root]) continue;
        visited[root] = true;
        stack.push_back({root, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto succ = dag.successors(f.c);
            if (f.i < succ.size()) {
                const ComponentId w = succ[f.i++];
                if (!visited[w]) {
                    visited[w] = true;
                    idx.parent_[w] = f.c;
                    stack.push_back({w, 0}); // invalidates f
                }
            } else {
                const ComponentId c = f.c;
                stack.pop_back();
                const std::uint32_t high = next_rank++;
                idx.intervals_[c] = {std::min(pending_low[c], high), high};
                if (idx.parent_[c] != kNoParent) {
                    std::uint32_t& up = pending_low[idx.parent_[c]];
                    up = std::min(up, idx.intervals_[c].low);
                }
            }
        }
    }

    // Everything the forest did not absorb; ascending enumeration keeps the
    // list sorted.
    for (ComponentId c = 0; c < n; ++c)
        for (ComponentId w : dag.successors(c))
            if (idx.parent_[w] != c) idx.non_tree_.emplace_back(c, w);

    if (idx.non_tree_.size() > limits.dual_max_nontree_edges)
        throw GuardError("dual labeling: " + std::to_string(idx.non_tree_.size()) +
                         " non-tree edges exceed limit " +
                         std::to_string(limits.dual_max_nontree_edges) +
                         " (quadratic link table)");

    // Close the link table: a link into x composes with a link out of any
    // tree descendant of x. Each popped link joins with everything recorded
    // so far; later arrivals join back when they pop.
    idx.table_ = idx.non_tree_;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& [src, dst] : idx.table_)
        seen.insert(static_cast<std::uint64_t>(src) * n + dst);

    std::vector<std::pair<ComponentId, ComponentId>> work = idx.table_;
    auto add_link = [&](ComponentId src, ComponentId dst) {
        if (!seen.insert(static_cast<std::uint64_t>(src) * n + dst).second) return;
        idx.table_.emplace_back(src, dst);
        work.emplace_back(src, dst);
    };
    auto under = [&](ComponentId below, ComponentId above) {
        return idx.intervals_[above].contains(idx.intervals_[below]);
    };
    while (!work.empty()) {
        const auto [a, b] = work.back();
        work.pop_back();
        const std::size_t count = idx.table_.size();
        for (std::size_t i = 0; i < count; ++i) {
            const auto [x, y] = idx.table_[i];
            if (under(x, b)) add_link(a, y); // (a->b), x under b, (x->y)
            if (under(a, y)) add_link(x, b); // (x->y), a under y, (a->b)
        }
    }
    std::sort(idx.table_.begin(), idx.table_.end());
    return idx;
}

bool DualLabelingIndex::query(ComponentId u, ComponentId v) const {
    const IntervalLabel& lu = intervals_[u];
    const IntervalLabel& lv = intervals_[v];
    if (lu.contains(lv)) return true;
    for (const auto& [x, y] : table_)
        if (lu.contains(intervals_[x]) && intervals_[y].contains(lv)) return true;
    return false;
}

bool DualLabelingIndex::link_table_contains(IntervalLabel src, IntervalLabel dst) const {
    for (const auto& [x, y] : table_)
        if (intervals_[x] == src && intervals_[y] == dst) return true;
    return false;
}

std::uint64_t DualLabelingIndex::byte_size() const {
    return intervals_.size() * sizeof(IntervalLabel) + parent_.size() * sizeof(ComponentId) +
           (non_tree_.size() + table_.size()) * sizeof(std::pair<ComponentId, ComponentId>);
}

DualLabelingIndex DualLabelingIndex::from_parts(
    std::vector<IntervalLabel> intervals, std::vector<ComponentId> parent,
    std::vector<std::pair<ComponentId, ComponentId>> non_tree,
    std::vector<std::pair<ComponentId, ComponentId>> table) {
    const std::size_t n = intervals.size();
    if (parent.size() != n)
        throw SerializationError("dual labeling: parent array has the wrong shape");
    for (ComponentId p : parent)
        if (p != kNoParent && p >= n)
            throw SerializationError("dual labeling: tree parent out of range");
    for (const auto* pairs : {&non_tree, &table})
        for (const auto& [src, dst] : *pairs)
            if (src >= n || dst >= n)
                throw SerializationError("dual labeling: link endpoint out of range");
    DualLabelingIndex idx;
    idx.intervals_ = std::move(intervals);
    idx.parent_ = std::move(parent);
    idx.non_tree_ = std::move(non_tree);
    idx.table_ = std::move(table);
    return idx;
}

} // namespace csreach
