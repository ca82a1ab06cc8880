// csreach: uniform wrapper over the reachability-index schemes, plus the
// versioned on-disk container.
//
// Index files carry a header (magic, format version, scheme, build seed,
// hash of the canonical graph text, component count) followed by the scheme
// payload. Loading refuses indexes whose graph hash does not match the graph
// being queried: everything downstream of the graph (summaries, indexing
// graph, condensation) is deterministic, so a matching hash guarantees that
// component ids line up.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "csreach/reach_index.hpp"

namespace csreach {

enum class SchemeKind : std::uint8_t { Tc = 1, Dual = 2, Grail = 3 };

// "tc", "dual", "grail"; parse throws ParamError on unknown names.
std::string to_string(SchemeKind kind);
SchemeKind parse_scheme(const std::string& name);

struct SchemeCapabilities {
    // Only traversal-based schemes can produce witness paths; the label-only
    // schemes answer booleans without visiting concrete edges.
    bool returns_paths = false;
};

class ReachScheme {
public:
    static ReachScheme build(SchemeKind kind, const CondensedDag& dag,
                             const BuildLimits& limits = {}, const GrailParams& grail = {});

    SchemeKind kind() const { return kind_; }
    SchemeCapabilities capabilities() const;

    // Exact reachability between components. Grail needs the dag for its DFS.
    bool query(const CondensedDag& dag, ComponentId u, ComponentId v) const;

    // Negative filter for pruned searches: false proves unreachability;
    // true may be a false positive (exact for tc and dual).
    bool may_reach(ComponentId u, ComponentId v) const;

    ComponentId component_count() const;
    std::uint64_t byte_size() const;
    std::uint64_t build_seed() const;

    const TcIndex& tc() const { return std::get<TcIndex>(impl_); }
    const DualLabelingIndex& dual() const { return std::get<DualLabelingIndex>(impl_); }
    const GrailIndex& grail() const { return std::get<GrailIndex>(impl_); }

    // --- serialization ---
    static constexpr std::uint32_t kFormatVersion = 1;

    void save(std::ostream& out, std::uint64_t graph_hash) const;
    // Throws SerializationError on bad magic/version/truncation or when
    // expected_graph_hash differs from the stored one.
    static ReachScheme load(std::istream& in, std::uint64_t expected_graph_hash);

    ReachScheme(SchemeKind kind, std::variant<TcIndex, DualLabelingIndex, GrailIndex> impl)
        : kind_(kind), impl_(std::move(impl)) {}

private:
    SchemeKind kind_;
    std::variant<TcIndex, DualLabelingIndex, GrailIndex> impl_;
};

// FNV-1a 64-bit hash of a byte string; applied to the canonical graph text
// to fingerprint index files.
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace csreach
