#include "csreach/grammar.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "csreach/errors.hpp"

namespace csreach {

namespace {

// Symbol layout for one CYK cell bitset: S, P, N, M, then a (O_j, C_j, T_j)
// triple per dense site index j.
constexpr std::uint32_t kS = 0;
constexpr std::uint32_t kP = 1;
constexpr std::uint32_t kN = 2;
constexpr std::uint32_t kM = 3;

constexpr std::uint32_t sym_open(std::uint32_t j) { return 4 + 3 * j; }
constexpr std::uint32_t sym_close(std::uint32_t j) { return 5 + 3 * j; }
constexpr std::uint32_t sym_t(std::uint32_t j) { return 6 + 3 * j; }

inline void set_bit(std::uint64_t* cell, std::uint32_t sym) {
    cell[sym >> 6] |= std::uint64_t{1} << (sym & 63);
}
inline bool test_bit(const std::uint64_t* cell, std::uint32_t sym) {
    return (cell[sym >> 6] >> (sym & 63)) & 1;
}

} // namespace

bool derives(std::span<const Label> labels, NonTerminal start, const DerivesLimits& limits) {
    // Eps labels spell nothing; drop them up front.
    std::vector<Label> seq;
    seq.reserve(labels.size());
    for (const Label& l : labels)
        if (!l.is_eps()) seq.push_back(l);

    if (seq.size() > limits.max_sequence)
        throw GuardError("derives: sequence of " + std::to_string(seq.size()) +
                         " labels exceeds limit " + std::to_string(limits.max_sequence));

    const std::size_t n = seq.size();
    if (n == 0) return true; // S, P, N and M are all nullable

    // Only sites present in the string matter; remap them densely.
    std::unordered_map<std::uint32_t, std::uint32_t> site_index;
    std::vector<std::uint32_t> site_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, _] = site_index.try_emplace(seq[i].site,
                                              static_cast<std::uint32_t>(site_index.size()));
        site_of[i] = it->second;
    }

    const std::uint32_t symbols = 4 + 3 * static_cast<std::uint32_t>(site_index.size());
    const std::size_t words = (symbols + 63) / 64;

    // Triangular CYK table; cell(i, len) covers seq[i .. i+len).
    std::vector<std::uint64_t> table(n * (n + 1) / 2 * words, 0);
    auto cell = [&](std::size_t i, std::size_t len) -> std::uint64_t* {
        std::size_t row = (len - 1) * n - (len - 1) * (len - 2) / 2;
        return table.data() + (row + i) * words;
    };

    // Length 1: the preterminal plus everything the nullable productions give
    // for free. close(j) is a one-token P (and a one-token T_j via T_j -> M C_j
    // with M -> eps); open(j) is a one-token N; either alone is an S.
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t* c = cell(i, 1);
        std::uint32_t j = site_of[i];
        if (seq[i].is_open()) {
            set_bit(c, sym_open(j));
            set_bit(c, kN);
            set_bit(c, kS);
        } else {
            set_bit(c, sym_close(j));
            set_bit(c, sym_t(j));
            set_bit(c, kP);
            set_bit(c, kS);
        }
    }

    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::uint64_t* dest = cell(i, len);
            bool d_s = false, d_p = false, d_n = false, d_m = false;
            for (std::size_t l = 1; l < len; ++l) {
                const std::uint64_t* left = cell(i, l);
                const std::uint64_t* right = cell(i + l, len - l);
                const bool left_m = test_bit(left, kM);
                const bool left_p = test_bit(left, kP);

                if (left_p && test_bit(right, kN)) d_s = true; // S -> P N
                if (left_m) {
                    if (test_bit(right, kP)) d_p = true; // P -> M P
                    if (test_bit(right, kN)) d_n = true; // N -> M N
                    if (test_bit(right, kM)) d_m = true; // M -> M M
                    if (len - l == 1 && seq[i + len - 1].is_close())
                        set_bit(dest, sym_t(site_of[i + len - 1])); // T_j -> M C_j
                }
                if (l == 1) {
                    // Site-symbol left sides exist only in one-token cells.
                    if (seq[i].is_close()) {
                        if (test_bit(right, kP)) d_p = true; // P -> C_j P
                    } else {
                        if (test_bit(right, kN)) d_n = true;                  // N -> O_j N
                        if (test_bit(right, sym_t(site_of[i]))) d_m = true;   // M -> O_j T_j
                    }
                }
            }
            // Nullable-side completions: M alone is a P and an N; P or N alone
            // is an S.
            if (d_m) d_p = d_n = true;
            if (d_p || d_n) d_s = true;
            if (d_s) set_bit(dest, kS);
            if (d_p) set_bit(dest, kP);
            if (d_n) set_bit(dest, kN);
            if (d_m) set_bit(dest, kM);
        }
    }

    return test_bit(cell(0, n), static_cast<std::uint32_t>(start));
}

} // namespace csreach
