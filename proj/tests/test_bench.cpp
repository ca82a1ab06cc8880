#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "csreach/bench.hpp"
#include "csreach/errors.hpp"
#include "csreach/session.hpp"

#include "test_support.hpp"

using namespace csreach;
using namespace csreach::test;

namespace {

const char* kCsvHeader =
    "graph,vertices,edges,summaries,scheme,build_ms,index_bytes,batch,class,n,total_ms,"
    "speedup_vs_tabulation";

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_SUITE("unit.bench") {

TEST_CASE("sampling labels pairs correctly and deterministically") {
    const QuerySession session(load_fixture("callchain.pvg"), SchemeKind::Grail);
    const QueryPairSample a = sample_query_pairs(session, 20, 20, 99);
    const QueryPairSample b = sample_query_pairs(session, 20, 20, 99);
    CHECK(a.reachable == b.reachable);
    CHECK(a.unreachable == b.unreachable);
    CHECK(a.reachable.size() == 20);
    CHECK(a.unreachable.size() == 20);
    for (const auto& [u, v] : a.reachable) CHECK(session.cs_query(u, v));
    for (const auto& [u, v] : a.unreachable) CHECK_FALSE(session.cs_query(u, v));
}

TEST_CASE("an exhausted budget reports a shortfall instead of spinning") {
    const QuerySession session(load_fixture("callchain.pvg"), SchemeKind::Grail);
    const QueryPairSample sample = sample_query_pairs(session, 1000, 1000, 7, 50);
    CHECK(sample.attempts <= 50);
    CHECK(sample.reachable.size() + sample.unreachable.size() <= 50);
    CHECK((sample.reachable_short || sample.unreachable_short));
}

TEST_CASE("bench rows lead with the tabulation baseline") {
    BenchOptions options;
    options.graph_name = "example";
    options.schemes = {SchemeKind::Tc, SchemeKind::Grail};
    options.n_reachable = 25;
    options.n_unreachable = 25;
    options.repeats = 3;
    options.seed = 3;
    const BenchReport report = run_bench(load_fixture("callchain.pvg"), options);

    REQUIRE(report.rows.size() == 6);
    CHECK(report.rows[0].scheme == "tabulation");
    CHECK(report.rows[0].query_class == "R");
    CHECK(report.rows[0].speedup_vs_tabulation == doctest::Approx(1.0));
    CHECK(report.rows[1].scheme == "tabulation");
    CHECK(report.rows[1].query_class == "NR");
    CHECK(report.rows[1].speedup_vs_tabulation == doctest::Approx(1.0));
    CHECK(report.rows[2].scheme == "tc");
    CHECK(report.rows[4].scheme == "grail");
    for (const BenchRow& row : report.rows) {
        CHECK(row.graph == "example");
        CHECK(row.vertices == 7);
        CHECK(row.batch == 25);
        CHECK(row.n == 25);
        CHECK(row.total_ms >= 0.0);
        CHECK(row.speedup_vs_tabulation > 0.0);
    }
}

TEST_CASE("an empty scheme list still yields the baseline report") {
    BenchOptions options;
    options.schemes = {};
    options.n_reachable = 10;
    options.n_unreachable = 10;
    options.repeats = 2;
    const BenchReport report = run_bench(load_fixture("callchain.pvg"), options);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].scheme == "tabulation");
    CHECK(report.rows[1].scheme == "tabulation");
}

TEST_CASE("a tripped guard skips the scheme and keeps the run alive") {
    BenchOptions options;
    options.schemes = {SchemeKind::Tc, SchemeKind::Grail};
    options.limits.tc_max_components = 2; // the example condenses to 14
    options.n_reachable = 10;
    options.n_unreachable = 10;
    options.repeats = 2;
    const BenchReport report = run_bench(load_fixture("callchain.pvg"), options);

    REQUIRE(report.rows.size() == 4); // tabulation + grail only
    CHECK(report.rows[2].scheme == "grail");
    REQUIRE(report.warnings.size() == 1);
    CHECK(report.warnings[0].find("tc") != std::string::npos);
    CHECK(report.warnings[0].find("skipped") != std::string::npos);
}

TEST_CASE("impossible batch sizes surface as shortfall warnings") {
    BenchOptions options;
    options.schemes = {SchemeKind::Grail};
    options.n_reachable = 4000;
    options.n_unreachable = 4000;
    options.sample_budget = 200;
    options.repeats = 2;
    const BenchReport report = run_bench(load_fixture("callchain.pvg"), options);
    CHECK_FALSE(report.warnings.empty());
    for (const BenchRow& row : report.rows) {
        CHECK(row.batch == 4000);
        CHECK(row.n < 4000);
    }
}

TEST_CASE("the CSV report carries the fixed header and quotes nothing") {
    BenchOptions options;
    options.graph_name = "name,with,commas";
    options.schemes = {SchemeKind::Dual};
    options.n_reachable = 5;
    options.n_unreachable = 5;
    options.repeats = 2;
    const BenchReport report = run_bench(load_fixture("callchain.pvg"), options);
    const std::string csv = to_csv(report);
    const auto lines = lines_of(csv);

    REQUIRE(lines.size() == 5); // header + 2 tabulation + 2 dual rows
    CHECK(lines[0] == kCsvHeader);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(lines[i].find("name_with_commas") == 0);
        std::size_t commas = 0;
        for (char ch : lines[i]) commas += ch == ',';
        CHECK(commas == 11);
    }
}

TEST_CASE("zero repeats are rejected") {
    BenchOptions options;
    options.repeats = 0;
    CHECK_THROWS_AS((void)run_bench(load_fixture("callchain.pvg"), options), ParamError);
}

} // TEST_SUITE
