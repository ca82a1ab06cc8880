// csreach: strongly-connected-component condensation of the indexing graph.
//
// Reachability indexes operate on DAGs, so the (possibly cyclic) indexing
// graph is condensed first. Components are numbered deterministically in
// reverse topological order: every DAG edge goes from a higher component id
// to a lower one.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "csreach/indexing_graph.hpp"

namespace csreach {

using ComponentId = std::uint32_t;

class CondensedDag {
public:
    // Builds a DAG directly from component edges (for tests and fixtures);
    // every edge must satisfy src > dst, which makes the result acyclic with
    // the same numbering convention condense() produces.
    CondensedDag(ComponentId component_count,
                 std::vector<std::pair<ComponentId, ComponentId>> edges);

    ComponentId component_count() const { return component_count_; }

    // Successors of component c, ascending, deduplicated, all < c.
    std::span<const ComponentId> successors(ComponentId c) const {
        return {succ_.data() + succ_begin_[c], succ_.data() + succ_begin_[c + 1]};
    }

    std::uint64_t edge_count() const { return succ_.size(); }

private:
    friend class Condensation;
    CondensedDag() = default;

    ComponentId component_count_ = 0;
    std::vector<std::uint32_t> succ_begin_;
    std::vector<ComponentId> succ_;
};

// The condensation of an indexing graph view: the DAG plus the map from
// index vertices to components.
class Condensation {
public:
    explicit Condensation(const IndexingGraphView& view);

    const CondensedDag& dag() const { return dag_; }

    ComponentId component_of(IndexVertex iv) const {
        return component_of_[iv.encode()];
    }
    const std::vector<ComponentId>& component_map() const { return component_of_; }

private:
    CondensedDag dag_;
    std::vector<ComponentId> component_of_; // indexed by IndexVertex::encode()
};

} // namespace csreach
