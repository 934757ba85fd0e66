#include "patmap/trace.hpp"

#include <limits>

#include "patmap/errors.hpp"

namespace patmap {

ValidationReport validate_trace(const Trace& t) {
    ValidationReport rep;
    if (t.empty()) {
        rep.ok = false;
        rep.violations.push_back({Violation::npos, "empty trace"});
        return rep;
    }
    for (size_t i = 0; i < t.records.size(); ++i) {
        const TraceRecord& r = t.records[i];
        if (r.seq != i) {
            rep.violations.push_back({i, "seq must increase by 1 from 0 (expected " +
                                             std::to_string(i) + ", got " + std::to_string(r.seq) + ")"});
        }
        if (r.size < 1) {
            rep.violations.push_back({i, "size must be >= 1"});
        } else if (r.size > kMaxAccessSize) {
            rep.violations.push_back({i, "size exceeds " + std::to_string(kMaxAccessSize)});
        } else if (r.addr > std::numeric_limits<uint64_t>::max() - (r.size - 1)) {
            rep.violations.push_back({i, "addr + size overflows the 64-bit address space"});
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

std::vector<Window> window_trace(const Trace& t, size_t window_len, size_t stride,
                                 size_t min_window) {
    if (window_len < min_window)
        throw ParamError("window_len (" + std::to_string(window_len) +
                         ") must be >= min_window (" + std::to_string(min_window) + ")");
    if (stride < 1) throw ParamError("stride must be >= 1");
    if (t.size() < min_window)
        throw ParamError("trace of " + std::to_string(t.size()) +
                         " records is below min_window " + std::to_string(min_window));

    const size_t n = t.size();
    std::vector<Window> windows;
    size_t pos = 0;
    while (pos + window_len <= n) {
        windows.push_back({pos, window_len, &t});
        pos += stride;
    }
    if (pos < n) {
        const size_t tail_len = n - pos;
        if (tail_len >= min_window) {
            windows.push_back({pos, tail_len, &t});
        } else if (!windows.empty()) {
            Window& last = windows.back();
            last.len = n - last.start; // merge short tail into the preceding window
        } else {
            windows.push_back({0, n, &t}); // whole-trace fallback
        }
    }
    return windows;
}

} // namespace patmap
