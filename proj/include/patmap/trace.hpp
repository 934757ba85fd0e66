#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace patmap {

enum class Op : uint8_t { Read, Write };

// One memory access. seq is the 0-based position of the record in its trace;
// it is redundant with the vector index and validate_trace checks that they
// agree (traces loaded from files may disagree, which is a data error).
struct TraceRecord {
    uint64_t seq = 0;
    uint64_t addr = 0;
    Op op = Op::Read;
    uint32_t size = 0;
};

constexpr uint32_t kMaxAccessSize = 4096;

struct Trace {
    std::vector<TraceRecord> records;
    std::string origin; // provenance label: generator name, file path, ...

    size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

struct Violation {
    size_t index; // record index, or npos for trace-level problems
    std::string reason;

    static constexpr size_t npos = static_cast<size_t>(-1);
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

// Report-style: never throws, lists every failing record.
ValidationReport validate_trace(const Trace& t);

// A contiguous slice of a trace. Windows hold a pointer to their parent and
// are only valid while it is alive.
struct Window {
    size_t start = 0;
    size_t len = 0;
    const Trace* parent = nullptr;

    const TraceRecord& operator[](size_t i) const { return parent->records[start + i]; }
};

constexpr size_t kDefaultMinWindow = 64;

// Tiles the trace with windows of window_len starting at 0, window starts
// every `stride` records. A tail shorter than window_len is emitted as its
// own window when it has at least min_window records, otherwise it is merged
// into the preceding window so every record stays accounted for. A trace
// shorter than window_len yields one whole-trace window. Full coverage is
// guaranteed for stride <= window_len; larger strides sample the trace and
// leave gaps.
std::vector<Window> window_trace(const Trace& t, size_t window_len, size_t stride,
                                 size_t min_window = kDefaultMinWindow);

} // namespace patmap
