#include "csreach/scheme.hpp"

#include <istream>
#include <ostream>

#include "csreach/errors.hpp"

namespace csreach {

std::string to_string(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::Tc: return "tc";
    case SchemeKind::Dual: return "dual";
    case SchemeKind::Grail: return "grail";
    }
    return "?";
}

SchemeKind parse_scheme(const std::string& name) {
    if (name == "tc") return SchemeKind::Tc;
    if (name == "dual") return SchemeKind::Dual;
    if (name == "grail") return SchemeKind::Grail;
    throw ParamError("unknown scheme '" + name + "' (expected tc, dual, or grail)");
}

ReachScheme ReachScheme::build(SchemeKind kind, const CondensedDag& dag, const BuildLimits& limits,
                               const GrailParams& grail) {
    switch (kind) {
    case SchemeKind::Tc: return ReachScheme(kind, TcIndex::build(dag, limits));
    case SchemeKind::Dual: return ReachScheme(kind, DualLabelingIndex::build(dag, limits));
    case SchemeKind::Grail: return ReachScheme(kind, GrailIndex::build(dag, grail));
    }
    throw ParamError("unknown scheme id");
}

SchemeCapabilities ReachScheme::capabilities() const {
    return {kind_ == SchemeKind::Grail};
}

bool ReachScheme::query(const CondensedDag& dag, ComponentId u, ComponentId v) const {
    switch (kind_) {
    case SchemeKind::Tc: return tc().query(u, v);
    case SchemeKind::Dual: return dual().query(u, v);
    case SchemeKind::Grail: return grail_query(grail(), dag, u, v);
    }
    return false;
}

bool ReachScheme::may_reach(ComponentId u, ComponentId v) const {
    switch (kind_) {
    case SchemeKind::Tc: return tc().query(u, v);
    case SchemeKind::Dual: return dual().query(u, v);
    case SchemeKind::Grail: return grail().may_reach(u, v);
    }
    return false;
}

ComponentId ReachScheme::component_count() const {
    return std::visit([](const auto& idx) { return idx.component_count(); }, impl_);
}

std::uint64_t ReachScheme::byte_size() const {
    return std::visit([](const auto& idx) { return idx.byte_size(); }, impl_);
}

std::uint64_t ReachScheme::build_seed() const {
    return kind_ == SchemeKind::Grail ? grail().seed() : 0;
}

// ------------------------------------------------------------ serialization --

namespace {

constexpr char kMagic[8] = {'c', 's', 'r', 'e', 'a', 'c', 'h', 'i'};

void put_bytes(std::ostream& out, const void* data, std::size_t size) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    put_bytes(out, b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    put_bytes(out, b, 8);
}

void get_bytes(std::istream& in, void* data, std::size_t size) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in.gcount()) != size)
        throw SerializationError("index file is truncated");
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    get_bytes(in, b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    get_bytes(in, b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_pairs(std::ostream& out, const std::vector<std::pair<ComponentId, ComponentId>>& pairs) {
    put_u64(out, pairs.size());
    for (const auto& [a, b] : pairs) {
        put_u32(out, a);
        put_u32(out, b);
    }
}

std::vector<std::pair<ComponentId, ComponentId>> get_pairs(std::istream& in) {
    const std::uint64_t count = get_u64(in);
    std::vector<std::pair<ComponentId, ComponentId>> pairs;
    pairs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint32_t a = get_u32(in);
        const std::uint32_t b = get_u32(in);
        pairs.emplace_back(a, b);
    }
    return pairs;
}

} // namespace

void ReachScheme::save(std::ostream& out, std::uint64_t graph_hash) const {
    put_bytes(out, kMagic, sizeof(kMagic));
    put_u32(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(kind_));
    put_u64(out, build_seed());
    put_u64(out, graph_hash);
    put_u32(out, component_count());

    switch (kind_) {
    case SchemeKind::Tc: {
        const auto& rows = tc().rows();
        put_u64(out, rows.size());
        for (std::uint64_t word : rows) put_u64(out, word);
        break;
    }
    case SchemeKind::Dual: {
        const DualLabelingIndex& idx = dual();
        for (const IntervalLabel& l : idx.intervals()) {
            put_u32(out, l.low);
            put_u32(out, l.high);
        }
        for (ComponentId p : idx.tree_parent()) put_u32(out, p);
        put_pairs(out, idx.non_tree_edges());
        put_pairs(out, idx.link_table());
        break;
    }
    case SchemeKind::Grail: {
        const GrailIndex& idx = grail();
        put_u32(out, idx.k_labels());
        for (const IntervalLabel& l : idx.labels()) {
            put_u32(out, l.low);
            put_u32(out, l.high);
        }
        break;
    }
    }
    if (!out) throw SerializationError("writing the index file failed");
}

ReachScheme ReachScheme::load(std::istream& in, std::uint64_t expected_graph_hash) {
    char magic[8];
    get_bytes(in, magic, sizeof(magic));
    for (int i = 0; i < 8; ++i)
        if (magic[i] != kMagic[i]) throw SerializationError("not an index file (bad magic)");

    const std::uint32_t version = get_u32(in);
    if (version != kFormatVersion)
        throw SerializationError("unsupported index format version " + std::to_string(version));

    const std::uint32_t kind_id = get_u32(in);
    if (kind_id < 1 || kind_id > 3)
        throw SerializationError("unknown scheme id " + std::to_string(kind_id));
    const SchemeKind kind = static_cast<SchemeKind>(kind_id);

    const std::uint64_t seed = get_u64(in);
    const std::uint64_t graph_hash = get_u64(in);
    if (graph_hash != expected_graph_hash)
        throw SerializationError("index was built for a different graph (hash mismatch)");

    const std::uint32_t components = get_u32(in);

    switch (kind) {
    case SchemeKind::Tc: {
        const std::uint64_t words = get_u64(in);
        std::vector<std::uint64_t> rows;
        rows.reserve(words);
        for (std::uint64_t i = 0; i < words; ++i) rows.push_back(get_u64(in));
        return ReachScheme(kind, TcIndex::from_parts(components, std::move(rows)));
    }
    case SchemeKind::Dual: {
        std::vector<IntervalLabel> intervals(components);
        for (IntervalLabel& l : intervals) {
            l.low = get_u32(in);
            l.high = get_u32(in);
        }
        std::vector<ComponentId> parent(components);
        for (ComponentId& p : parent) p = get_u32(in);
        auto non_tree = get_pairs(in);
        auto table = get_pairs(in);
        return ReachScheme(kind, DualLabelingIndex::from_parts(std::move(intervals),
                                                               std::move(parent),
                                                               std::move(non_tree),
                                                               std::move(table)));
    }
    case SchemeKind::Grail: {
        const std::uint32_t k_labels = get_u32(in);
        if (k_labels == 0 || k_labels > 64)
            throw SerializationError("grail: implausible k_labels " + std::to_string(k_labels));
        std::vector<IntervalLabel> labels(static_cast<std::uint64_t>(k_labels) * components);
        for (IntervalLabel& l : labels) {
            l.low = get_u32(in);
            l.high = get_u32(in);
        }
        return ReachScheme(kind, GrailIndex::from_parts(k_labels, seed, components,
                                                        std::move(labels)));
    }
    }
    throw SerializationError("unknown scheme id");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace csreach
