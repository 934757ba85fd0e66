#pragma once

#include <string>
#include <vector>

#include "patmap/memsim.hpp"

namespace patmap {

struct MetricSet {
    double ral = 0.0;    // L1 hits per off-chip data movement
    double l3_apc = 0.0; // accesses completed per L3-active cycle
    double pipeline_stall_degree = 0.0;      // stall / total cycles, [0,1]
    double l2_beyond_active_degree = 0.0;    // L1-miss-active / memory-active cycles, [0,1]
    double latency_non_hidden_degree = 0.0;  // stall / memory-active cycles, ratio >= 0
    double prefetch_request_ratio = 0.0;     // L2 prefetches / all L2 requests, [0,1]
    double ipc_model = 0.0; // one instruction per record / total cycles; model artifact

    // Metrics whose denominator was zero and clamped to 1.
    std::vector<std::string> guarded;
};

struct MetricsOptions {
    // When set, prefetch_request_ratio divides by demand requests only.
    bool prefetch_ratio_demand_only = false;
};

MetricSet derive_metrics(const SimCounters& s, const MetricsOptions& opt = {});

} // namespace patmap
