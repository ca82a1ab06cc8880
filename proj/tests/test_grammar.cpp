#include "doctest.h"

#include <vector>

#include "csreach/errors.hpp"
#include "csreach/grammar.hpp"

using namespace csreach;

namespace {

bool in(std::vector<Label> labels, NonTerminal nt) {
    return derives(labels, nt);
}

const Label o1 = Label::open(1), c1 = Label::close(1);
const Label o2 = Label::open(2), c2 = Label::close(2);
const Label o4 = Label::open(4);
const Label c3 = Label::close(3);
const Label e = Label::eps();

} // namespace

TEST_SUITE("unit.grammar") {

TEST_CASE("the empty string is in every start symbol") {
    for (NonTerminal nt : {NonTerminal::S, NonTerminal::P, NonTerminal::N, NonTerminal::M})
        CHECK(derives({}, nt));
}

TEST_CASE("a matched pair derives every start symbol") {
    for (NonTerminal nt : {NonTerminal::S, NonTerminal::P, NonTerminal::N, NonTerminal::M})
        CHECK(in({o1, c1}, nt));
}

TEST_CASE("matched pairs must agree on the site") {
    CHECK_FALSE(in({Label::open(5), Label::close(2)}, NonTerminal::S));
    CHECK_FALSE(in({o1, c2}, NonTerminal::M));
}

TEST_CASE("unmatched close then unmatched open is S only") {
    const std::vector<Label> w = {c1, o2};
    CHECK(in(w, NonTerminal::S));
    CHECK_FALSE(in(w, NonTerminal::P)); // P cannot end with an unmatched open
    CHECK_FALSE(in(w, NonTerminal::N)); // N cannot start with an unmatched close
    CHECK_FALSE(in(w, NonTerminal::M));
}

TEST_CASE("the partially matched example string derives only S") {
    // close(1) open(2) close(2) close(3) open(4): the 2-pair matches, the
    // rest is an unmatched-close prefix and an unmatched-open suffix.
    const std::vector<Label> w = {c1, o2, c2, c3, o4};
    CHECK(in(w, NonTerminal::S));
    CHECK_FALSE(in(w, NonTerminal::P));
    CHECK_FALSE(in(w, NonTerminal::N));
    CHECK_FALSE(in(w, NonTerminal::M));
}

TEST_CASE("close prefixes live in P, open suffixes live in N") {
    CHECK(in({o1, c1, c1}, NonTerminal::P)); // matched pair then unmatched close
    CHECK(in({o1, c1, c1}, NonTerminal::S));
    CHECK_FALSE(in({o1, c1, c1}, NonTerminal::N));
    CHECK_FALSE(in({o1, c1, c1}, NonTerminal::M));

    CHECK(in({o2, o1, c1}, NonTerminal::N)); // unmatched open then matched pair
    CHECK(in({o2, o1, c1}, NonTerminal::S));
    CHECK_FALSE(in({o2, o1, c1}, NonTerminal::P));
    CHECK_FALSE(in({o2, o1, c1}, NonTerminal::M));
}

TEST_CASE("M is closed under nesting and concatenation") {
    CHECK(in({o1, o2, c2, c1}, NonTerminal::M));
    CHECK(in({o1, c1, o2, c2}, NonTerminal::M));
    CHECK(in({o1, o1, c1, c1}, NonTerminal::M));
    CHECK_FALSE(in({o1, o2, c1, c2}, NonTerminal::M)); // crossing, not nesting
    CHECK_FALSE(in({o1, o2, c1, c2}, NonTerminal::S));
}

TEST_CASE("eps labels are deleted before the membership check") {
    CHECK(in({e, o1, e, e, c1, e}, NonTerminal::M));
    CHECK(in({e, e, e}, NonTerminal::M));
    CHECK(in({e, c1, e, o2, e}, NonTerminal::S));
    CHECK_FALSE(in({e, c1, e, o2, e}, NonTerminal::M));
}

TEST_CASE("deep nesting stays in M") {
    std::vector<Label> w;
    for (CallSiteId i = 1; i <= 100; ++i) w.push_back(Label::open(i));
    for (CallSiteId i = 100; i >= 1; --i) w.push_back(Label::close(i));
    CHECK(in(w, NonTerminal::M));
    w.push_back(Label::close(7)); // now one close is unmatched
    CHECK_FALSE(in(w, NonTerminal::M));
    CHECK(in(w, NonTerminal::P));
    CHECK(in(w, NonTerminal::S));
}

TEST_CASE("overlong sequences trip the guard") {
    std::vector<Label> w(10001, c1);
    CHECK_THROWS_AS((void)derives(w, NonTerminal::S), GuardError);
    DerivesLimits tight{.max_sequence = 4};
    const std::vector<Label> five = {o1, o1, c1, c1, c1};
    CHECK_THROWS_AS((void)derives(five, NonTerminal::S, tight), GuardError);
    // The bound applies after eps deletion: a huge all-eps sequence is fine.
    std::vector<Label> noise(20000, e);
    CHECK(derives(noise, NonTerminal::M));
}

} // TEST_SUITE
