#include "csreach/reach_index.hpp"

#include "csreach/errors.hpp"

namespace csreach {

TcIndex TcIndex::build(const CondensedDag& dag, const BuildLimits& limits) {
    const ComponentId n = dag.component_count();
    if (n > limits.tc_max_components)
        throw GuardError("transitive closure: " + std::to_string(n) +
                         " components exceed limit " + std::to_string(limits.tc_max_components) +
                         " (quadratic memory)");

    TcIndex idx;
    idx.component_count_ = n;
    idx.words_ = (n + 63) / 64;
    idx.rows_.assign(static_cast<std::uint64_t>(n) * idx.words_, 0);

    // Successor ids are all smaller, so one ascending pass sees every row it
    // needs already complete.
    for (ComponentId c = 0; c < n; ++c) {
        std::uint64_t* row = idx.rows_.data() + static_cast<std::uint64_t>(c) * idx.words_;
        row[c / 64] |= std::uint64_t{1} << (c % 64);
        for (ComponentId s : dag.successors(c)) {
            const std::uint64_t* srow = idx.rows_.data() + static_cast<std::uint64_t>(s) * idx.words_;
            for (std::uint32_t w = 0; w < idx.words_; ++w) row[w] |= srow[w];
        }
    }
    return idx;
}

TcIndex TcIndex::from_parts(ComponentId component_count, std::vector<std::uint64_t> rows) {
    const std::uint32_t words = (component_count + 63) / 64;
    if (rows.size() != static_cast<std::uint64_t>(component_count) * words)
        throw SerializationError("transitive closure rows have the wrong shape");
    TcIndex idx;
    idx.component_count_ = component_count;
    idx.words_ = words;
    idx.rows_ = std::move(rows);
    return idx;
}

} // namespace csreach
