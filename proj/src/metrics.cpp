#include "patmap/metrics.hpp"

namespace patmap {

namespace {

double guarded_div(double num, uint64_t denom, const char* name, std::vector<std::string>& guarded) {
    if (denom == 0) {
        guarded.push_back(name);
        return num;
    }
    return num / static_cast<double>(denom);
}

} // namespace

MetricSet derive_metrics(const SimCounters& s, const MetricsOptions& opt) {
    MetricSet m;
    m.ral = guarded_div(static_cast<double>(s.l1.hits), s.offchip_movements, "ral", m.guarded);
    m.l3_apc = guarded_div(static_cast<double>(s.l3_accesses_completed), s.l3_active_cycles,
                           "l3_apc", m.guarded);
    m.pipeline_stall_degree = guarded_div(static_cast<double>(s.stall_cycles), s.total_cycles,
                                          "pipeline_stall_degree", m.guarded);
    m.l2_beyond_active_degree =
        guarded_div(static_cast<double>(s.l2_beyond_active_cycles), s.mem_active_cycles,
                    "l2_beyond_active_degree", m.guarded);
    m.latency_non_hidden_degree = guarded_div(static_cast<double>(s.stall_cycles),
                                              s.mem_active_cycles, "latency_non_hidden_degree",
                                              m.guarded);
    const uint64_t pf_denom = opt.prefetch_ratio_demand_only
                                  ? s.l2.demand_requests
                                  : s.l2.demand_requests + s.l2.prefetch_requests;
    m.prefetch_request_ratio = guarded_div(static_cast<double>(s.l2.prefetch_requests), pf_denom,
                                           "prefetch_request_ratio", m.guarded);
    m.ipc_model = guarded_div(static_cast<double>(s.trace_records), s.total_cycles, "ipc_model",
                              m.guarded);
    return m;
}

} // namespace patmap
