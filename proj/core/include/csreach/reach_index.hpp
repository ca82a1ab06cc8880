// csreach: pluggable reachability indexes over the condensed DAG.
//
// Three schemes answer "does component u reach component v":
//  - TcIndex: the full transitive closure as bit rows; exact, O(1) query,
//    quadratic memory.
//  - DualLabelingIndex: post-order interval labels on a spanning forest plus
//    a transitively-closed table of non-tree edges; exact, no traversal.
//  - GrailIndex: several randomized post-order interval labelings; interval
//    non-containment in any labeling refutes reachability with no traversal,
//    otherwise an interval-pruned DFS decides exactly.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "csreach/condense.hpp"
#include "csreach/rng.hpp"

namespace csreach {

struct BuildLimits {
    // TcIndex memory is |C|^2/8 bytes; refuse beyond this many components.
    std::uint32_t tc_max_components = 100000;
    // The dual-labeling link table is quadratic in the non-tree edge count.
    std::uint32_t dual_max_nontree_edges = 20000;
};

// ---------------------------------------------------------------- TcIndex --

class TcIndex {
public:
    static TcIndex build(const CondensedDag& dag, const BuildLimits& limits = {});

    bool query(ComponentId u, ComponentId v) const {
        return (rows_[static_cast<std::uint64_t>(u) * words_ + v / 64] >> (v % 64)) & 1u;
    }

    ComponentId component_count() const { return component_count_; }
    std::uint64_t byte_size() const { return rows_.size() * 8; }

    const std::vector<std::uint64_t>& rows() const { return rows_; }
    static TcIndex from_parts(ComponentId component_count, std::vector<std::uint64_t> rows);

private:
    TcIndex() = default;
    ComponentId component_count_ = 0;
    std::uint32_t words_ = 0; // words per row
    std::vector<std::uint64_t> rows_;
};

// ---------------------------------------------------- shared interval type --

struct IntervalLabel {
    // 1-based post-order ranks: high is the node's own rank; low is the
    // minimum rank of the nodes below it (tree subtree for dual labeling,
    // all DAG descendants for Grail, where the label of an edge's head must
    // be contained in the label of its tail).
    std::uint32_t low = 0;
    std::uint32_t high = 0;

    bool contains(const IntervalLabel& other) const {
        return low <= other.low && other.high <= high;
    }
    friend bool operator==(const IntervalLabel& a, const IntervalLabel& b) {
        return a.low == b.low && a.high == b.high;
    }
};

// ------------------------------------------------------- DualLabelingIndex --

class DualLabelingIndex {
public:
    static constexpr ComponentId kNoParent = 0xffffffffu;

    // Deterministic spanning forest: first-visit DFS from a virtual root
    // whose children are all components in descending id order (sources
    // first), per-node successors ascending. Throws GuardError when the
    // non-tree edge count exceeds the limit.
    static DualLabelingIndex build(const CondensedDag& dag, const BuildLimits& limits = {});

    // Reachable iff v's interval is contained in u's (tree path), or some
    // table entry (x -> y) has x under u and v under y.
    bool query(ComponentId u, ComponentId v) const;

    const std::vector<IntervalLabel>& intervals() const { return intervals_; }
    const std::vector<ComponentId>& tree_parent() const { return parent_; }
    // Non-tree DAG edges, sorted.
    const std::vector<std::pair<ComponentId, ComponentId>>& non_tree_edges() const {
        return non_tree_;
    }
    // Transitively closed link table as (src, dst) component pairs, sorted.
    const std::vector<std::pair<ComponentId, ComponentId>>& link_table() const {
        return table_;
    }
    bool link_table_contains(IntervalLabel src, IntervalLabel dst) const;

    ComponentId component_count() const {
        return static_cast<ComponentId>(intervals_.size());
    }
    std::uint64_t byte_size() const;

    static DualLabelingIndex from_parts(std::vector<IntervalLabel> intervals,
                                        std::vector<ComponentId> parent,
                                        std::vector<std::pair<ComponentId, ComponentId>> non_tree,
                                        std::vector<std::pair<ComponentId, ComponentId>> table);

private:
    DualLabelingIndex() = default;

    std::vector<IntervalLabel> intervals_;
    std::vector<ComponentId> parent_;
    std::vector<std::pair<ComponentId, ComponentId>> non_tree_;
    std::vector<std::pair<ComponentId, ComponentId>> table_;
};

// -------------------------------------------------------------- GrailIndex --

// Explicit traversal orders for one Grail labeling: the order roots are
// tried from the virtual root and the order each node's successors are
// visited. The seeded builder fills these by shuffling; tests may record
// fixed orders to pin exact labels.
struct GrailLabelingOrders {
    std::vector<ComponentId> root_order;            // a permutation of all components
    std::vector<std::vector<ComponentId>> children; // per component, a permutation of its successors
};

struct GrailParams {
    std::uint32_t k_labels = 5;
    std::uint64_t seed = 1;
};

class GrailIndex {
public:
    static GrailIndex build(const CondensedDag& dag, const GrailParams& params = {});
    // Deterministic build from explicit per-labeling orders.
    static GrailIndex build_with_orders(const CondensedDag& dag,
                                        const std::vector<GrailLabelingOrders>& orders,
                                        std::uint64_t seed = 0);

    std::uint32_t k_labels() const { return k_labels_; }
    std::uint64_t seed() const { return seed_; }
    ComponentId component_count() const { return component_count_; }

    IntervalLabel label(std::uint32_t labeling, ComponentId c) const {
        return labels_[static_cast<std::uint64_t>(labeling) * component_count_ + c];
    }

    // True iff v's interval is contained in u's in every labeling; false
    // proves v unreachable from u.
    bool may_reach(ComponentId u, ComponentId v) const;

    const std::vector<IntervalLabel>& labels() const { return labels_; }
    std::uint64_t byte_size() const;

    static GrailIndex from_parts(std::uint32_t k_labels, std::uint64_t seed,
                                 ComponentId component_count,
                                 std::vector<IntervalLabel> labels);

private:
    GrailIndex() = default;

    std::uint32_t k_labels_ = 0;
    std::uint64_t seed_ = 0;
    ComponentId component_count_ = 0;
    std::vector<IntervalLabel> labels_; // k_labels rows of component_count
};

struct GrailQueryStats {
    bool label_pruned = false;    // answered false by labels alone
    std::uint64_t expansions = 0; // nodes expanded by the pruned DFS
};

// Exact query: label check first, then interval-pruned DFS on the DAG.
bool grail_query(const GrailIndex& index, const CondensedDag& dag, ComponentId u,
                 ComponentId v, GrailQueryStats* stats = nullptr);

} // namespace csreach
