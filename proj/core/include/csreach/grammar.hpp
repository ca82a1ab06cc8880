// csreach: the context-sensitive reachability grammar.
//
// Label strings of context-sensitive paths are the language of S in
//
//   S -> P N
//   P -> M P | close(i) P | eps        (unmatched returns, then)
//   N -> M N | open(i) N | eps         (unmatched calls)
//   M -> open(i) M close(i) | M M | eps  (matched segments)
//
// over the parenthesis alphabet, for every site i in 1..k. Eps labels
// contribute nothing to a path string. derives() decides membership of a
// label sequence in L(start) with a CYK pass over the binarized form
//
//   S -> P N;  P -> M P | C_i P;  N -> M N | O_i N;
//   M -> O_i T_i | M M;  T_i -> M C_i
//
// with preterminals O_i/C_i for open(i)/close(i) and nullable S, P, N, M.
#pragma once

#include <cstddef>
#include <span>

#include "csreach/label.hpp"

namespace csreach {

enum class NonTerminal : std::uint8_t { S = 0, P = 1, N = 2, M = 3 };

struct DerivesLimits {
    // CYK is cubic; sequences longer than this throw GuardError.
    std::size_t max_sequence = 10000;
};

// True iff the label sequence, eps labels deleted, is in L(start).
bool derives(std::span<const Label> labels, NonTerminal start,
             const DerivesLimits& limits = {});

} // namespace csreach
