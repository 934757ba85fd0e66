#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "patmap/errors.hpp"
#include "patmap/synthgen.hpp"

using namespace patmap;

namespace {

// Lag of the strongest nonzero-lag autocorrelation peak of the address
// sequence; the independent periodicity oracle for sawtooth generators.
size_t autocorr_peak_lag(const Trace& t, size_t max_lag) {
    const size_t n = std::min<size_t>(t.size(), 8192);
    std::vector<double> y(n);
    double mean = 0.0;
    for (size_t i = 0; i < n; ++i) mean += static_cast<double>(t.records[i].addr);
    mean /= static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) y[i] = static_cast<double>(t.records[i].addr) - mean;

    size_t best_lag = 1;
    double best = -1e300;
    for (size_t lag = 1; lag <= max_lag && lag < n; ++lag) {
        double acc = 0.0;
        for (size_t i = 0; i + lag < n; ++i) acc += y[i] * y[i + lag];
        acc /= static_cast<double>(n - lag);
        if (acc > best) { best = acc; best_lag = lag; }
    }
    return best_lag;
}

// Least-squares coefficient of determination of addr vs. index.
double line_fit_r2(const Trace& t) {
    const size_t n = t.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double y0 = static_cast<double>(t.records[0].addr);
    for (size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i);
        const double y = static_cast<double>(t.records[i].addr) - y0;
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double nn = static_cast<double>(n);
    const double sst = syy - sy * sy / nn;
    if (sst <= 0) return 1.0;
    const double sxy_c = sxy - sx * sy / nn;
    const double sxx_c = sxx - sx * sx / nn;
    return (sxy_c * sxy_c / sxx_c) / sst;
}

} // namespace

TEST_CASE("P5 unrolls triangular sweeps") {
    GenSpec s = default_spec(PatternLabel::P5);
    s.stride = 128;
    s.n_outer = 3;
    Trace t = generate(s);
    std::vector<uint64_t> offs;
    for (const auto& r : t.records) offs.push_back(r.addr - s.base_addr);
    CHECK(offs == std::vector<uint64_t>{0, 0, 128, 0, 128, 256});
}

TEST_CASE("P1 is an arithmetic line") {
    GenSpec s = default_spec(PatternLabel::P1);
    s.stride = 128;
    s.n_outer = 4;
    Trace t = generate(s);
    std::vector<uint64_t> offs;
    for (const auto& r : t.records) offs.push_back(r.addr);
    CHECK(offs == std::vector<uint64_t>{0, 128, 256, 384});
    for (const auto& r : t.records) CHECK(r.op == Op::Read);
}

TEST_CASE("same seed, same bytes") {
    GenSpec s = default_spec(PatternLabel::P4);
    s.seed = 42;
    s.n_outer = 5000;
    Trace a = generate(s);
    Trace b = generate(s);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a.records[i].addr == b.records[i].addr);
        CHECK(a.records[i].op == b.records[i].op);
    }
    s.seed = 43;
    Trace c = generate(s);
    bool all_same = true;
    for (size_t i = 0; i < a.size(); ++i) all_same &= a.records[i].addr == c.records[i].addr;
    CHECK_FALSE(all_same);
}

TEST_CASE("P4 emits read-then-write pairs to the same address") {
    GenSpec s = default_spec(PatternLabel::P4);
    s.n_outer = 1000;
    Trace t = generate(s);
    REQUIRE(t.size() == 2000);
    for (size_t i = 0; i < t.size(); i += 2) {
        CHECK(t.records[i].op == Op::Read);
        CHECK(t.records[i + 1].op == Op::Write);
        CHECK(t.records[i].addr == t.records[i + 1].addr);
        CHECK(t.records[i].addr % s.access_size == 0);
        CHECK(t.records[i].addr < s.base_addr + s.footprint);
    }
}

TEST_CASE("sawtooth autocorrelation peaks exactly at the period") {
    for (uint64_t period : {32ull, 100ull, 311ull}) {
        GenSpec s = default_spec(PatternLabel::P2);
        s.stride = 8;
        s.period = period;
        s.n_outer = 40;
        Trace t = generate(s);
        CHECK(autocorr_peak_lag(t, period + period / 2) == period);
    }
    GenSpec s6 = default_spec(PatternLabel::P6);
    s6.period = 64;
    s6.n_outer = 64;
    CHECK(autocorr_peak_lag(generate(s6), 96) == 64);
}

TEST_CASE("line generators fit a least-squares line with R2 >= 0.999") {
    GenSpec p1 = default_spec(PatternLabel::P1);
    p1.n_outer = 20000;
    CHECK(line_fit_r2(generate(p1)) >= 0.999);
    GenSpec p3 = default_spec(PatternLabel::P3);
    p3.n_outer = 20000;
    CHECK(line_fit_r2(generate(p3)) >= 0.999);
}

TEST_CASE("P4 successive draws land near each other almost never") {
    GenSpec s = default_spec(PatternLabel::P4);
    s.footprint = uint64_t{1} << 30;
    s.n_outer = 50000;
    Trace t = generate(s);
    // Distance between successive distinct addresses (the read of each
    // read-modify-write pair); the pair itself is distance zero by design.
    size_t near = 0, pairs = 0;
    uint64_t prev = t.records[0].addr;
    for (const auto& r : t.records) {
        if (r.addr == prev) continue;
        const uint64_t dist = r.addr > prev ? r.addr - prev : prev - r.addr;
        near += dist <= kDefaultTriggerDistance;
        pairs++;
        prev = r.addr;
    }
    CHECK(static_cast<double>(near) / static_cast<double>(pairs) <= 0.01);
}

TEST_CASE("generator specs enforce their stride constraints") {
    GenSpec s = default_spec(PatternLabel::P1);
    s.stride = 64; // not > c
    CHECK_THROWS_AS(generate(s), ParamError);
    s = default_spec(PatternLabel::P2);
    s.stride = 2048; // not < d
    CHECK_THROWS_AS(generate(s), ParamError);
    s = default_spec(PatternLabel::P3);
    s.stride = 2048; // not > d
    CHECK_THROWS_AS(generate(s), ParamError);
    s = default_spec(PatternLabel::P4);
    s.footprint = 1 << 19;
    CHECK_THROWS_AS(generate(s), ParamError);
}

TEST_CASE("generate_mix splits records proportionally and labels segments") {
    GenSpec p2 = default_spec(PatternLabel::P2);
    GenSpec p4 = default_spec(PatternLabel::P4);
    Trace t = generate_mix({{p2, 0.5}, {p4, 0.5}}, 100000);
    REQUIRE(t.size() == 100000);
    CHECK(t.origin == "mix:P2[0,50000),P4[50000,100000)");
    // first segment is the sawtooth, second the random pairs
    CHECK(t.records[0].addr == p2.base_addr);
    CHECK(t.records[49999].seq == 49999);
    for (size_t i = 1; i < t.size(); ++i) CHECK(t.records[i].seq == t.records[i - 1].seq + 1);
}

TEST_CASE("generate_mix honors a 1:3 split") {
    GenSpec p2 = default_spec(PatternLabel::P2);
    GenSpec p4 = default_spec(PatternLabel::P4);
    Trace t = generate_mix({{p2, 0.25}, {p4, 0.75}}, 40000);
    REQUIRE(t.size() == 40000);
    CHECK(t.origin == "mix:P2[0,10000),P4[10000,40000)");
}

TEST_CASE("a single full-fraction part equals plain generate") {
    GenSpec s = default_spec(PatternLabel::P2);
    Trace mix = generate_mix({{s, 1.0}}, 5000);
    Trace plain = generate_n(s, 5000);
    REQUIRE(mix.size() == plain.size());
    for (size_t i = 0; i < mix.size(); ++i) CHECK(mix.records[i].addr == plain.records[i].addr);
}

TEST_CASE("generate_mix validates fractions") {
    GenSpec s = default_spec(PatternLabel::P2);
    CHECK_THROWS_AS(generate_mix({{s, 0.5}, {s, 0.4}}, 100), ParamError);
    CHECK_THROWS_AS(generate_mix({{s, -0.5}, {s, 1.5}}, 100), ParamError);
    CHECK_THROWS_AS(generate_mix({}, 100), ParamError);
}
