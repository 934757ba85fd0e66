#pragma once

#include <cstdint>
#include <utility>

#include "patmap/pattern.hpp"
#include "patmap/trace.hpp"

namespace patmap {

struct LevelConfig {
    uint64_t capacity; // bytes
    uint32_t associativity;
    uint32_t latency; // service cycles for a hit at this level
};

struct HierarchyConfig {
    uint32_t line_size = kDefaultLineSize;
    LevelConfig l1{32 * 1024, 8, 4};
    LevelConfig l2{256 * 1024, 8, 12};
    LevelConfig l3{25 * 1024 * 1024, 20, 40};
    uint32_t mem_latency = 150;
    uint32_t mshr = 10; // max overlapped in-flight accesses
    bool prefetch_enabled = true;
    uint32_t prefetch_degree = 2;                        // lines fetched ahead
    uint64_t prefetch_trigger_d = kDefaultTriggerDistance; // max stream stride, bytes
    bool fully_associative = false; // every level becomes one set

    void validate() const; // throws ParamError
};

struct LevelCounters {
    uint64_t hits = 0;
    uint64_t misses = 0;
    uint64_t demand_requests = 0;
    uint64_t prefetch_requests = 0;
};

// Raw event counts. Counter contract (shared with the reference oracle): an
// access covering k cache lines probes each line once; a write additionally
// commits to each of its lines right after probing it (line-granular
// read-modify-write), and that commit counts as one more L1 request which
// always hits. Prefetches probe L2 (and L3 on an L2 miss) but never L1.
struct SimCounters {
    LevelCounters l1, l2, l3;
    uint64_t offchip_movements = 0; // memory->L3 fills, demand and prefetch alike

    uint64_t trace_records = 0; // input records
    uint64_t accesses = 0;      // line-granular engine operations

    uint64_t total_cycles = 0;
    uint64_t stall_cycles = 0;            // issue waits: full MSHR window or RMW dependence
    uint64_t mem_active_cycles = 0;       // >= 1 access in flight, L1 hits included
    uint64_t l2_beyond_active_cycles = 0; // >= 1 L1 miss in flight
    uint64_t l3_active_cycles = 0;        // >= 1 L3-or-memory access in flight
    uint64_t l3_accesses_completed = 0;   // demand accesses served by L3 or memory
    uint64_t l3_service_cycles = 0;       // summed service time of those accesses
    double mlp_avg = 0.0; // mean outstanding L3-level accesses while any is outstanding
};

// Trace-driven three-level inclusive LRU hierarchy with an L2 stream
// prefetcher and an in-order, MSHR-limited timing model.
//
// Lookup: L1 -> L2 -> L3 -> memory; fills propagate into every level between
// memory and L1 (no back-invalidation, no writeback modeling). The prefetcher
// trains on L2 demand misses: two successive misses within prefetch_trigger_d
// bytes and a consistent direction establish a stream and fetch
// prefetch_degree next lines into L2/L3; once established, in-stream demand
// requests (hits included) keep the stream running ahead. Prefetches cost no
// cycles but are counted at the levels they probe.
//
// Timing: accesses issue in order, at most one per cycle, each occupying one
// of `mshr` slots for its service latency. Issue stalls while all slots are
// busy and while a write waits on the read of its read-modify-write pair.
SimCounters simulate(const Trace& t, const HierarchyConfig& cfg);

// Independent, deliberately naive fully-associative LRU at line granularity:
// an explicit recency vector scanned linearly. Uses the same probe contract
// as simulate (see SimCounters). Traces over 10^5 records are rejected.
// Returns (hits, misses).
std::pair<uint64_t, uint64_t> reference_lru(const Trace& t, size_t capacity_lines,
                                            uint32_t line_size = kDefaultLineSize);

} // namespace patmap
