#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "patmap/errors.hpp"
#include "patmap/profiler.hpp"
#include "patmap/rng.hpp"

using namespace patmap;

TEST_CASE("importance evaluates t*n / (t_s + n*t_p)") {
    ProgramProfile p;
    p.t_s = 100.0;
    p.t_p = 0.0;
    CHECK(importance({"a", 23.0, 1, ""}, p) == doctest::Approx(0.23).epsilon(1e-12));

    p.t_s = 10.0;
    p.t_p = 20.0;
    CHECK(importance({"b", 5.0, 4, ""}, p) == doctest::Approx(20.0 / 90.0).epsilon(1e-12));
    CHECK(importance({"c", 0.0, 7, ""}, p) == 0.0);
}

TEST_CASE("importance rejects a zero denominator") {
    ProgramProfile p;
    p.t_s = 0.0;
    p.t_p = 0.0;
    CHECK_THROWS_AS(importance({"a", 1.0, 2, ""}, p), ParamError);
}

TEST_CASE("importance is linear in t and non-decreasing in n") {
    ProgramProfile p;
    p.t_s = 12.0;
    p.t_p = 3.0;
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const double t = rng.next_unit() * 50.0;
        const int n = 1 + static_cast<int>(rng.next_below(32));
        const double one = importance({"x", t, n, ""}, p);
        CHECK(importance({"x", 2 * t, n, ""}, p) == doctest::Approx(2 * one).epsilon(1e-12));
        CHECK(importance({"x", t, n + 1, ""}, p) >= one - 1e-12);
    }
}

TEST_CASE("select_hotspots keeps strictly-above-threshold records in order") {
    ProgramProfile p;
    p.t_s = 100.0;
    p.t_p = 0.0;
    p.threshold_pct = 5.0;
    p.records = {{"big", 23.0, 1, ""}, {"mid", 5.1, 1, ""}, {"low", 4.9, 1, ""}};
    auto hot = select_hotspots(p);
    REQUIRE(hot.size() == 2);
    CHECK(hot[0].first == "big");
    CHECK(hot[1].first == "mid");

    // exactly at the threshold is excluded
    p.records = {{"edge", 5.0, 1, ""}};
    CHECK(select_hotspots(p).empty());

    p.records = {{"a", 1.0, 1, ""}, {"b", 2.0, 1, ""}};
    CHECK(select_hotspots(p).empty());
}

TEST_CASE("select_hotspots matches a brute-force filter-and-sort") {
    SplitMix64 rng(99);
    ProgramProfile p;
    p.t_s = 5.0 + rng.next_unit() * 10.0;
    p.t_p = rng.next_unit() * 10.0;
    p.threshold_pct = 5.0;
    for (int i = 0; i < 1000; ++i)
        p.records.push_back({"seg" + std::to_string(i), rng.next_unit() * 4.0,
                             1 + static_cast<int>(rng.next_below(16)), ""});

    // independent oracle: recompute, filter, sort
    std::vector<std::pair<std::string, double>> expect;
    for (const auto& r : p.records) {
        const double imp = r.t * r.n / (p.t_s + r.n * p.t_p);
        if (imp > 0.05) expect.emplace_back(r.segment_id, imp);
    }
    std::sort(expect.begin(), expect.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });

    auto got = select_hotspots(p);
    REQUIRE(got.size() == expect.size());
    for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].first == expect[i].first);
        CHECK(got[i].second == doctest::Approx(expect[i].second).epsilon(1e-15));
    }

    // stability under permutation of the input records
    std::reverse(p.records.begin(), p.records.end());
    auto permuted = select_hotspots(p);
    REQUIRE(permuted.size() == got.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(permuted[i].first == got[i].first);
}

TEST_CASE("profile files parse header and records") {
    std::istringstream in(
        "# comment\n"
        "TS=100 TP=25 DELTA=5\n"
        "kernel_a,23,1\n"
        "kernel_b,4,8\n");
    ProgramProfile p = read_profile(in);
    CHECK(p.t_s == 100.0);
    CHECK(p.t_p == 25.0);
    CHECK(p.threshold_pct == 5.0);
    REQUIRE(p.records.size() == 2);
    CHECK(p.records[1].segment_id == "kernel_b");
    CHECK(p.records[1].n == 8);
}

TEST_CASE("malformed profiles raise FormatError") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_profile(in);
    };
    CHECK_THROWS_AS(parse("kernel_a,23,1\n"), FormatError);          // missing header
    CHECK_THROWS_AS(parse("TS=1 TP=x\na,1,1\n"), FormatError);       // bad number
    CHECK_THROWS_AS(parse("TS=1 TP=1\na,1\n"), FormatError);         // short record
    CHECK_THROWS_AS(parse("TS=0 TP=0\na,1,1\n"), FormatError);       // invariant broken
}
