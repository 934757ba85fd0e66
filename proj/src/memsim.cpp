#include "patmap/memsim.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <vector>

#include "patmap/errors.hpp"

namespace patmap {

namespace {

enum class ServiceLevel : uint8_t { L1, L2, L3, Mem };

class Cache {
public:
    Cache(const LevelConfig& cfg, uint32_t line_size, bool fully_associative) {
        uint32_t assoc = cfg.associativity;
        uint64_t sets = cfg.capacity / (static_cast<uint64_t>(line_size) * assoc);
        if (fully_associative) {
            assoc = static_cast<uint32_t>(cfg.capacity / line_size);
            sets = 1;
        }
        if (sets == 0 || assoc == 0)
            throw ParamError("cache capacity smaller than associativity * line size");
        // Round the set count down to a power of two so the index is a mask.
        set_mask_ = std::bit_floor(sets) - 1;
        assoc_ = assoc;
        lines_.resize((set_mask_ + 1) * assoc_);
    }

    bool probe_and_touch(uint64_t line_addr) {
        Line* set = set_of(line_addr);
        for (uint32_t i = 0; i < assoc_; ++i) {
            if (set[i].valid && set[i].tag == line_addr) {
                set[i].last_use = ++tick_;
                return true;
            }
        }
        return false;
    }

    void fill(uint64_t line_addr) {
        Line* set = set_of(line_addr);
        Line* victim = &set[0];
        for (uint32_t i = 0; i < assoc_; ++i) {
            if (!set[i].valid) { victim = &set[i]; break; }
            if (set[i].last_use < victim->last_use) victim = &set[i];
        }
        victim->valid = true;
        victim->tag = line_addr;
        victim->last_use = ++tick_;
    }

private:
    struct Line {
        uint64_t tag = 0;
        uint64_t last_use = 0;
        bool valid = false;
    };

    Line* set_of(uint64_t line_addr) {
        return &lines_[(line_addr & set_mask_) * assoc_];
    }

    uint64_t set_mask_ = 0;
    uint32_t assoc_ = 0;
    uint64_t tick_ = 0;
    std::vector<Line> lines_;
};

// Single-stream next-line prefetcher in front of L2. Trains on demand misses;
// an established stream also advances on in-stream demand hits so it keeps
// running ahead of the access stream rather than the miss stream.
class StreamPrefetcher {
public:
    StreamPrefetcher(const HierarchyConfig& cfg)
        : enabled_(cfg.prefetch_enabled),
          degree_(cfg.prefetch_degree),
          max_delta_lines_(cfg.prefetch_trigger_d / cfg.line_size) {}

    // Returns candidate prefetch line addresses for one L2 demand request.
    void on_demand(uint64_t line, bool miss, std::vector<uint64_t>& out) {
        out.clear();
        if (!enabled_) return;
        if (!has_last_) {
            if (miss) { last_line_ = line; has_last_ = true; }
            return;
        }
        const int64_t delta = static_cast<int64_t>(line - last_line_);
        if (delta == 0) return;
        const bool near = static_cast<uint64_t>(delta < 0 ? -delta : delta) <= max_delta_lines_ &&
                          max_delta_lines_ > 0;
        const int dir = delta > 0 ? 1 : -1;
        if (miss) {
            if (near && (dir_ == 0 || dir_ == dir)) {
                dir_ = dir;
                ahead(line, out);
            } else {
                dir_ = 0; // broken stream, retrain
            }
            last_line_ = line;
        } else if (dir_ != 0 && near && dir == dir_) {
            ahead(line, out);
            last_line_ = line;
        }
    }

private:
    void ahead(uint64_t line, std::vector<uint64_t>& out) {
        for (uint32_t k = 1; k <= degree_; ++k) {
            const uint64_t target = line + static_cast<uint64_t>(dir_) * k;
            if (dir_ > 0 && target < line) break; // address space edge
            if (dir_ < 0 && target > line) break;
            out.push_back(target);
        }
    }

    bool enabled_;
    uint32_t degree_;
    uint64_t max_delta_lines_;
    bool has_last_ = false;
    uint64_t last_line_ = 0;
    int dir_ = 0;
};

// Issue interval bookkeeping for one class of accesses ("any", "L1 miss",
// "L3-level"): accesses arrive sorted by start, so the union is a merge sweep.
struct ActiveUnion {
    uint64_t cycles = 0;
    uint64_t end = 0;
    bool any = false;

    void add(uint64_t start, uint64_t finish) {
        if (!any || start >= end) {
            cycles += finish - start;
            end = finish;
            any = true;
        } else if (finish > end) {
            cycles += finish - end;
            end = finish;
        }
    }
};

} // namespace

void HierarchyConfig::validate() const {
    if (line_size == 0 || (line_size & (line_size - 1)) != 0)
        throw ParamError("line_size must be a power of two");
    if (!(l1.capacity < l2.capacity && l2.capacity < l3.capacity))
        throw ParamError("cache capacities must strictly increase by level");
    if (!(l1.latency < l2.latency && l2.latency < l3.latency && l3.latency < mem_latency))
        throw ParamError("latencies must strictly increase by level");
    if (mshr == 0) throw ParamError("mshr must be >= 1");
    if (prefetch_enabled && prefetch_degree == 0)
        throw ParamError("prefetch_degree must be >= 1 when prefetching is enabled");
}

SimCounters simulate(const Trace& t, const HierarchyConfig& cfg) {
    cfg.validate();
    if (t.empty()) throw ParamError("simulate: empty trace");

    Cache l1(cfg.l1, cfg.line_size, cfg.fully_associative);
    Cache l2(cfg.l2, cfg.line_size, cfg.fully_associative);
    Cache l3(cfg.l3, cfg.line_size, cfg.fully_associative);
    StreamPrefetcher prefetcher(cfg);

    SimCounters c;
    c.trace_records = t.size();

    const uint32_t line_shift = static_cast<uint32_t>(std::countr_zero(cfg.line_size));
    const uint32_t latency[4] = {cfg.l1.latency, cfg.l2.latency, cfg.l3.latency, cfg.mem_latency};

    // Timing state.
    std::priority_queue<uint64_t, std::vector<uint64_t>, std::greater<>> in_flight;
    uint64_t prev_issue = 0;
    bool issued_any = false;
    uint64_t last_completion = 0;
    ActiveUnion mem_active, l2_beyond_active, l3_active;

    // RMW dependence: a write immediately after a read to the same line waits
    // for that read to complete.
    uint64_t prev_record_completion = 0;
    uint64_t prev_record_line = 0;
    bool prev_record_was_read = false;

    std::vector<uint64_t> pf_lines;

    for (const TraceRecord& rec : t.records) {
        const uint64_t first_line = rec.addr >> line_shift;
        const uint64_t last_byte = rec.addr + (rec.size ? rec.size - 1 : 0);
        // Wrapped addr+size (invalid per validate_trace) degrades to one line.
        const uint64_t last_line = std::max(first_line, last_byte >> line_shift);
        const bool dependent =
            prev_record_was_read && rec.op == Op::Write && first_line == prev_record_line;

        uint64_t record_completion = 0;
        for (uint64_t line = first_line;; ++line) {
            // --- cache lookup ---
            ServiceLevel level;
            c.l1.demand_requests++;
            if (l1.probe_and_touch(line)) {
                c.l1.hits++;
                level = ServiceLevel::L1;
            } else {
                c.l1.misses++;
                c.l2.demand_requests++;
                const bool l2_hit = l2.probe_and_touch(line);
                if (l2_hit) {
                    c.l2.hits++;
                    level = ServiceLevel::L2;
                } else {
                    c.l2.misses++;
                    c.l3.demand_requests++;
                    if (l3.probe_and_touch(line)) {
                        c.l3.hits++;
                        level = ServiceLevel::L3;
                    } else {
                        c.l3.misses++;
                        c.offchip_movements++;
                        l3.fill(line);
                        level = ServiceLevel::Mem;
                    }
                    l2.fill(line);
                }
                l1.fill(line);

                prefetcher.on_demand(line, !l2_hit, pf_lines);
                for (uint64_t pf : pf_lines) {
                    c.l2.prefetch_requests++;
                    if (l2.probe_and_touch(pf)) {
                        c.l2.hits++;
                    } else {
                        c.l2.misses++;
                        c.l3.prefetch_requests++;
                        if (l3.probe_and_touch(pf)) {
                            c.l3.hits++;
                        } else {
                            c.l3.misses++;
                            c.offchip_movements++;
                            l3.fill(pf);
                        }
                        l2.fill(pf);
                    }
                }
            }
            if (rec.op == Op::Write) {
                // Line-granular read-modify-write: the commit probe always hits.
                c.l1.demand_requests++;
                l1.probe_and_touch(line);
                c.l1.hits++;
            }

            // --- timing ---
            uint64_t issue = issued_any ? prev_issue + 1 : 0;
            if (dependent && line == first_line)
                issue = std::max(issue, prev_record_completion);
            while (!in_flight.empty() && in_flight.top() <= issue) in_flight.pop();
            if (in_flight.size() >= cfg.mshr) {
                issue = std::max(issue, in_flight.top());
                while (!in_flight.empty() && in_flight.top() <= issue) in_flight.pop();
            }
            if (issued_any) c.stall_cycles += issue - (prev_issue + 1);
            const uint64_t service = latency[static_cast<int>(level)];
            const uint64_t completion = issue + service;
            in_flight.push(completion);
            prev_issue = issue;
            issued_any = true;
            last_completion = std::max(last_completion, completion);
            record_completion = std::max(record_completion, completion);
            c.accesses++;

            mem_active.add(issue, completion);
            if (level != ServiceLevel::L1) l2_beyond_active.add(issue, completion);
            if (level == ServiceLevel::L3 || level == ServiceLevel::Mem) {
                l3_active.add(issue, completion);
                c.l3_accesses_completed++;
                c.l3_service_cycles += service;
            }

            if (line == last_line) break;
        }

        prev_record_completion = record_completion;
        prev_record_line = first_line;
        prev_record_was_read = rec.op == Op::Read;
    }

    c.total_cycles = last_completion;
    c.mem_active_cycles = mem_active.cycles;
    c.l2_beyond_active_cycles = l2_beyond_active.cycles;
    c.l3_active_cycles = l3_active.cycles;
    c.mlp_avg = c.l3_active_cycles
                    ? static_cast<double>(c.l3_service_cycles) / static_cast<double>(c.l3_active_cycles)
                    : 0.0;
    return c;
}

std::pair<uint64_t, uint64_t> reference_lru(const Trace& t, size_t capacity_lines,
                                            uint32_t line_size) {
    if (t.size() > 100000) throw ParamError("reference_lru: trace too long for the naive oracle");
    if (capacity_lines == 0) throw ParamError("reference_lru: capacity must be >= 1 line");
    if (line_size == 0 || (line_size & (line_size - 1)) != 0)
        throw ParamError("reference_lru: line_size must be a power of two");

    const uint32_t shift = static_cast<uint32_t>(std::countr_zero(line_size));
    std::vector<uint64_t> recency; // front = most recent
    recency.reserve(capacity_lines);
    uint64_t hits = 0, misses = 0;

    auto probe = [&](uint64_t line) {
        for (size_t i = 0; i < recency.size(); ++i) {
            if (recency[i] == line) {
                recency.erase(recency.begin() + static_cast<std::ptrdiff_t>(i));
                recency.insert(recency.begin(), line);
                hits++;
                return;
            }
        }
        misses++;
        if (recency.size() == capacity_lines) recency.pop_back();
        recency.insert(recency.begin(), line);
    };

    for (const TraceRecord& rec : t.records) {
        const uint64_t first_line = rec.addr >> shift;
        const uint64_t last_byte = rec.addr + (rec.size ? rec.size - 1 : 0);
        const uint64_t last_line = std::max(first_line, last_byte >> shift);
        for (uint64_t line = first_line;; ++line) {
            probe(line);
            if (rec.op == Op::Write) probe(line); // commit probe of the RMW pair
            if (line == last_line) break;
        }
    }
    return {hits, misses};
}

} // namespace patmap
