// csreach: edge labels of the parenthesis alphabet.
//
// An edge is labeled eps, open(i), or close(i) where i is a call-site id in
// 1..k. open(i) marks a call edge of site i, close(i) the matching return
// edge; eps edges are ordinary intraprocedural edges.
#pragma once

#include <cstdint>
#include <string>
#include <tuple>

namespace csreach {

using VertexId = std::uint32_t;
using FunctionId = std::uint32_t;
using CallSiteId = std::uint32_t;

enum class LabelKind : std::uint8_t {
    Eps = 0,
    Open = 1,
    Close = 2,
};

struct Label {
    LabelKind kind = LabelKind::Eps;
    CallSiteId site = 0; // 0 for eps, 1..k otherwise

    static Label eps() { return Label{LabelKind::Eps, 0}; }
    static Label open(CallSiteId site) { return Label{LabelKind::Open, site}; }
    static Label close(CallSiteId site) { return Label{LabelKind::Close, site}; }

    bool is_eps() const { return kind == LabelKind::Eps; }
    bool is_open() const { return kind == LabelKind::Open; }
    bool is_close() const { return kind == LabelKind::Close; }

    friend bool operator==(const Label& a, const Label& b) {
        return a.kind == b.kind && a.site == b.site;
    }
    friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }
    // Total order used by the canonical file form: eps < open(i) < close(i),
    // sites ascending within a kind.
    friend bool operator<(const Label& a, const Label& b) {
        return std::tuple(static_cast<int>(a.kind), a.site) <
               std::tuple(static_cast<int>(b.kind), b.site);
    }
};

// Text form used by the graph file format and diagnostics:
// "eps", "open <site>", "close <site>".
std::string to_string(const Label& label);

} // namespace csreach
