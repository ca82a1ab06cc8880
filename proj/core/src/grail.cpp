#include "csreach/reach_index.hpp"

#include <algorithm>

#include "csreach/errors.hpp"

namespace csreach {

namespace {

// One labeling: post-order ranks from a DFS forest driven by the given root
// and child orders, then lows tightened over every DAG successor so each
// edge's head label nests inside its tail label.
void run_labeling(const CondensedDag& dag, const GrailLabelingOrders& orders,
                  IntervalLabel* out) {
    const ComponentId n = dag.component_count();
    std::vector<std::uint32_t> rank(n, 0);
    std::vector<bool> visited(n, false);
    struct Frame {
        ComponentId c;
        std::uint32_t i;
    };
    std::vector<Frame> stack;
    std::uint32_t next_rank = 1;

    for (ComponentId root : orders.root_order) {
        if (visited[root]) continue;
        visited[root] = true;
        stack.push_back({root, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& kids = orders.children[f.c];
            if (f.i < kids.size()) {
                const ComponentId w = kids[f.i++];
                if (!visited[w]) {
                    visited[w] = true;
                    stack.push_back({w, 0}); // invalidates f
                }
            } else {
                rank[f.c] = next_rank++;
                stack.pop_back();
            }
        }
    }

    // Successor ids are all smaller, so ascending order sees finished lows.
    for (ComponentId c = 0; c < n; ++c) {
        std::uint32_t low = rank[c];
        for (ComponentId s : dag.successors(c)) low = std::min(low, out[s].low);
        out[c] = {low, rank[c]};
    }
}

void check_orders(const CondensedDag& dag, const std::vector<GrailLabelingOrders>& orders) {
    const ComponentId n = dag.component_count();
    if (orders.empty()) throw ParamError("grail: at least one labeling is required");
    for (const GrailLabelingOrders& o : orders) {
        if (o.root_order.size() != n || o.children.size() != n)
            throw ParamError("grail: labeling orders do not cover every component");
        std::vector<bool> seen(n, false);
        for (ComponentId c : o.root_order) {
            if (c >= n || seen[c]) throw ParamError("grail: root order is not a permutation");
            seen[c] = true;
        }
        for (ComponentId c = 0; c < n; ++c) {
            const auto succ = dag.successors(c);
            std::vector<ComponentId> a(succ.begin(), succ.end());
            std::vector<ComponentId> b = o.children[c];
            std::sort(b.begin(), b.end());
            if (a != b)
                throw ParamError("grail: child order of component " + std::to_string(c) +
                                 " does not match its successors");
        }
    }
}

} // namespace

GrailIndex GrailIndex::build(const CondensedDag& dag, const GrailParams& params) {
    if (params.k_labels == 0) throw ParamError("grail: k_labels must be at least 1");
    const ComponentId n = dag.component_count();

    Rng rng(params.seed);
    std::vector<GrailLabelingOrders> orders(params.k_labels);
    for (GrailLabelingOrders& o : orders) {
        o.root_order.resize(n);
        for (ComponentId c = 0; c < n; ++c) o.root_order[c] = c;
        rng.shuffle(o.root_order);
        o.children.resize(n);
        for (ComponentId c = 0; c < n; ++c) {
            const auto succ = dag.successors(c);
            o.children[c].assign(succ.begin(), succ.end());
            rng.shuffle(o.children[c]);
        }
    }
    GrailIndex idx = build_with_orders(dag, orders, params.seed);
    return idx;
}

GrailIndex GrailIndex::build_with_orders(const CondensedDag& dag,
                                         const std::vector<GrailLabelingOrders>& orders,
                                         std::uint64_t seed) {
    check_orders(dag, orders);
    const ComponentId n = dag.component_count();
    GrailIndex idx;
    idx.k_labels_ = static_cast<std::uint32_t>(orders.size());
    idx.seed_ = seed;
    idx.component_count_ = n;
    idx.labels_.assign(static_cast<std::uint64_t>(idx.k_labels_) * n, {});
    for (std::uint32_t l = 0; l < idx.k_labels_; ++l)
        run_labeling(dag, orders[l], idx.labels_.data() + static_cast<std::uint64_t>(l) * n);
    return idx;
}

bool GrailIndex::may_reach(ComponentId u, ComponentId v) const {
    const IntervalLabel* lu = labels_.data() + u;
    const IntervalLabel* lv = labels_.data() + v;
    for (std::uint32_t l = 0; l < k_labels_; ++l) {
        if (!lu->contains(*lv)) return false;
        lu += component_count_;
        lv += component_count_;
    }
    return true;
}

std::uint64_t GrailIndex::byte_size() const { return labels_.size() * sizeof(IntervalLabel); }

GrailIndex GrailIndex::from_parts(std::uint32_t k_labels, std::uint64_t seed,
                                  ComponentId component_count, std::vector<IntervalLabel> labels) {
    if (k_labels == 0) throw SerializationError("grail: k_labels must be at least 1");
    if (labels.size() != static_cast<std::uint64_t>(k_labels) * component_count)
        throw SerializationError("grail: label table has the wrong shape");
    GrailIndex idx;
    idx.k_labels_ = k_labels;
    idx.seed_ = seed;
    idx.component_count_ = component_count;
    idx.labels_ = std::move(labels);
    return idx;
}

bool grail_query(const GrailIndex& index, const CondensedDag& dag, ComponentId u, ComponentId v,
                 GrailQueryStats* stats) {
    if (stats != nullptr) *stats = {};
    if (u == v) return true;
    if (!index.may_reach(u, v)) {
        if (stats != nullptr) stats->label_pruned = true;
        return false;
    }

    // Labels say "maybe": decide exactly with a DFS that discards any branch
    // whose labels rule v out.
    std::vector<bool> visited(dag.component_count(), false);
    std::vector<ComponentId> stack;
    stack.push_back(u);
    visited[u] = true;
    while (!stack.empty()) {
        const ComponentId c = stack.back();
        stack.pop_back();
        if (stats != nullptr) ++stats->expansions;
        for (ComponentId s : dag.successors(c)) {
            if (s == v) return true;
            if (visited[s] || !index.may_reach(s, v)) continue;
            visited[s] = true;
            stack.push_back(s);
        }
    }
    return false;
}

} // namespace csreach
