#include <sstream>

#include "doctest.h"
#include "patmap/errors.hpp"
#include "patmap/trace.hpp"
#include "patmap/trace_io.hpp"

using namespace patmap;

namespace {

Trace make_trace(size_t n, uint64_t stride = 64, uint32_t size = 8) {
    Trace t;
    for (size_t i = 0; i < n; ++i)
        t.records.push_back({i, i * stride, Op::Read, size});
    return t;
}

// Independent tiling oracle: enumerate expected (start, len) pairs by hand
// rules rather than reusing window_trace's logic.
std::vector<std::pair<size_t, size_t>> starts_of(const std::vector<Window>& ws) {
    std::vector<std::pair<size_t, size_t>> out;
    for (const Window& w : ws) out.emplace_back(w.start, w.len);
    return out;
}

} // namespace

TEST_CASE("validate_trace rejects the empty trace") {
    Trace t;
    auto rep = validate_trace(t);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].reason == "empty trace");
}

TEST_CASE("validate_trace accepts a minimal well-formed trace") {
    Trace t = make_trace(3);
    auto rep = validate_trace(t);
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
}

TEST_CASE("validate_trace names the record with a zero size") {
    Trace t = make_trace(3);
    t.records[1].size = 0;
    auto rep = validate_trace(t);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].index == 1);
    CHECK(rep.violations[0].reason.find("size") != std::string::npos);
}

TEST_CASE("validate_trace flags seq gaps, oversize accesses and address overflow") {
    Trace t = make_trace(4);
    t.records[2].seq = 7;
    t.records[3].size = 8192;
    auto rep = validate_trace(t);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violations.size() == 2);

    Trace o = make_trace(1);
    o.records[0].addr = ~uint64_t{0} - 2;
    o.records[0].size = 8;
    rep = validate_trace(o);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violations[0].reason.find("overflow") != std::string::npos);
}

TEST_CASE("window_trace tiles with a grid plus a long-enough tail") {
    Trace t = make_trace(1000);
    auto ws = window_trace(t, 256, 256);
    CHECK(starts_of(ws) == std::vector<std::pair<size_t, size_t>>{
                               {0, 256}, {256, 256}, {512, 256}, {768, 232}});
}

TEST_CASE("window_trace emits exactly one window when it fits exactly") {
    Trace t = make_trace(256);
    auto ws = window_trace(t, 256, 256);
    CHECK(starts_of(ws) == std::vector<std::pair<size_t, size_t>>{{0, 256}});
}

TEST_CASE("window_trace falls back to the whole trace when shorter than a window") {
    Trace t = make_trace(100);
    auto ws = window_trace(t, 256, 256);
    CHECK(starts_of(ws) == std::vector<std::pair<size_t, size_t>>{{0, 100}});
}

TEST_CASE("window_trace merges short tails into the last window") {
    Trace t = make_trace(1030);
    auto ws = window_trace(t, 256, 256);
    // tail of 6 records is below min_window and extends the final window
    CHECK(starts_of(ws) == std::vector<std::pair<size_t, size_t>>{
                               {0, 256}, {256, 256}, {512, 256}, {768, 262}});
}

TEST_CASE("window_trace rejects bad parameters") {
    Trace t = make_trace(100);
    CHECK_THROWS_AS(window_trace(t, 32, 32), ParamError);
    CHECK_THROWS_AS(window_trace(t, 64, 0), ParamError);
    CHECK_THROWS_AS(window_trace(Trace{}, 64, 64), ParamError);
}

TEST_CASE("windowing is deterministic and covers every record for stride <= window_len") {
    for (size_t len : {129u, 500u, 1024u, 4097u}) {
        Trace t = make_trace(len);
        for (size_t wl : {64u, 100u, 256u}) {
            for (size_t stride : {wl / 2, wl}) {
                if (stride == 0) continue;
                auto a = window_trace(t, wl, stride);
                auto b = window_trace(t, wl, stride);
                CHECK(starts_of(a) == starts_of(b));
                std::vector<bool> covered(len, false);
                for (const Window& w : a) {
                    REQUIRE(w.start + w.len <= len);
                    for (size_t i = 0; i < w.len; ++i) covered[w.start + i] = true;
                }
                CHECK(std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }));
            }
        }
    }
}

TEST_CASE("text round-trip preserves records") {
    Trace t = make_trace(10, 100, 16);
    t.records[3].op = Op::Write;
    std::ostringstream out;
    write_trace(t, out, TraceFormat::Text);
    // spot-check the serialized shape: seq,addr_hex,op,size
    CHECK(out.str().substr(0, 9) == "0,0,R,16\n");
    std::istringstream in(out.str());
    Trace back = read_trace(in, TraceFormat::Text);
    REQUIRE(back.size() == t.size());
    for (size_t i = 0; i < t.size(); ++i) {
        CHECK(back.records[i].seq == t.records[i].seq);
        CHECK(back.records[i].addr == t.records[i].addr);
        CHECK(back.records[i].op == t.records[i].op);
        CHECK(back.records[i].size == t.records[i].size);
    }
}

TEST_CASE("binary format carries the GPTR magic and round-trips") {
    Trace t = make_trace(5, 4096, 8);
    t.records[0].addr = 0x7f3a00;
    t.records[4].op = Op::Write;
    std::ostringstream out;
    write_trace(t, out, TraceFormat::Binary);
    const std::string bytes = out.str();
    REQUIRE(bytes.size() == 5 + 5 * 11);
    CHECK(bytes.substr(0, 4) == "GPTR");
    CHECK(bytes[4] == 0x01);
    std::istringstream in(bytes);
    Trace back = read_trace(in, TraceFormat::Binary);
    REQUIRE(back.size() == 5);
    CHECK(back.records[0].addr == 0x7f3a00);
    CHECK(back.records[4].op == Op::Write);
    CHECK(back.records[2].seq == 2);
}

TEST_CASE("malformed trace text raises FormatError") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_trace(in, TraceFormat::Text);
    };
    CHECK_THROWS_AS(parse("0,10,R"), FormatError);
    CHECK_THROWS_AS(parse("0,zz,R,8"), FormatError);
    CHECK_THROWS_AS(parse("0,10,X,8"), FormatError);
    CHECK_THROWS_AS(parse("0,10,R,0"), FormatError);
    std::istringstream bad_magic("GPTQ\x01");
    CHECK_THROWS_AS(read_trace(bad_magic, TraceFormat::Binary), FormatError);
}
