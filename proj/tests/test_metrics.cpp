#include <cmath>

#include "doctest.h"
#include "patmap/metrics.hpp"
#include "patmap/rng.hpp"
#include "patmap/synthgen.hpp"

using namespace patmap;

TEST_CASE("metric formulas on hand-filled counters") {
    SimCounters s;
    s.l1.hits = 990;
    s.offchip_movements = 10;
    s.l3_accesses_completed = 100;
    s.l3_active_cycles = 400;
    s.stall_cycles = 250;
    s.total_cycles = 1000;
    s.mem_active_cycles = 800;
    s.l2_beyond_active_cycles = 600;
    s.l2.prefetch_requests = 88;
    s.l2.demand_requests = 12;
    s.trace_records = 500;

    MetricSet m = derive_metrics(s);
    CHECK(m.ral == doctest::Approx(99.0));
    CHECK(m.l3_apc == doctest::Approx(0.25));
    CHECK(m.pipeline_stall_degree == doctest::Approx(0.25));
    CHECK(m.l2_beyond_active_degree == doctest::Approx(0.75));
    CHECK(m.latency_non_hidden_degree == doctest::Approx(250.0 / 800.0));
    CHECK(m.prefetch_request_ratio == doctest::Approx(0.88));
    CHECK(m.ipc_model == doctest::Approx(0.5));
    CHECK(m.guarded.empty());

    MetricSet demand_only = derive_metrics(s, {.prefetch_ratio_demand_only = true});
    CHECK(demand_only.prefetch_request_ratio == doctest::Approx(88.0 / 12.0));
}

TEST_CASE("zero denominators are guarded and flagged") {
    SimCounters s;
    s.l1.hits = 7;
    MetricSet m = derive_metrics(s);
    CHECK(m.ral == doctest::Approx(7.0)); // divided by max(1, 0)
    CHECK(std::find(m.guarded.begin(), m.guarded.end(), "ral") != m.guarded.end());
    CHECK_FALSE(m.guarded.empty());
}

TEST_CASE("RaL recomputes back to L1 hits") {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        SimCounters s;
        s.offchip_movements = 1 + rng.next_below(10000);
        s.l1.hits = rng.next_below(1 << 20);
        MetricSet m = derive_metrics(s);
        CHECK(m.ral * static_cast<double>(s.offchip_movements) ==
              doctest::Approx(static_cast<double>(s.l1.hits)).epsilon(1e-9));
    }
}

TEST_CASE("degree metrics stay in range on fuzzed counter sets") {
    SplitMix64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        SimCounters s;
        s.total_cycles = 1 + rng.next_below(1 << 28);
        s.stall_cycles = rng.next_below(s.total_cycles + 1);
        s.mem_active_cycles = 1 + rng.next_below(s.total_cycles);
        s.l2_beyond_active_cycles = rng.next_below(s.mem_active_cycles + 1);
        s.l3_active_cycles = rng.next_below(s.l2_beyond_active_cycles + 1);
        s.l3_accesses_completed = rng.next_below(1 << 20);
        s.l1.hits = rng.next_below(1 << 20);
        s.offchip_movements = 1 + rng.next_below(1 << 20);
        s.l2.demand_requests = 1 + rng.next_below(1 << 20);
        s.l2.prefetch_requests = rng.next_below(1 << 20);
        MetricSet m = derive_metrics(s);
        CHECK(m.pipeline_stall_degree >= 0.0);
        CHECK(m.pipeline_stall_degree <= 1.0);
        CHECK(m.l2_beyond_active_degree >= 0.0);
        CHECK(m.l2_beyond_active_degree <= 1.0);
        CHECK(m.prefetch_request_ratio >= 0.0);
        CHECK(m.prefetch_request_ratio <= 1.0);
        CHECK(m.latency_non_hidden_degree >= 0.0);
        CHECK(m.ral >= 0.0);
        CHECK(m.l3_apc >= 0.0);
    }
}

TEST_CASE("Little's law ties APC to MLP over service latency") {
    // steady-state streams at two different service depths
    for (PatternLabel label : {PatternLabel::P1, PatternLabel::P4}) {
        GenSpec s = default_spec(label);
        Trace t = generate_n(s, 50000);
        SimCounters c = simulate(t, HierarchyConfig{});
        if (c.l3_accesses_completed == 0) continue;
        const double eff_latency = static_cast<double>(c.l3_service_cycles) /
                                   static_cast<double>(c.l3_accesses_completed);
        MetricSet m = derive_metrics(c);
        CHECK(m.l3_apc == doctest::Approx(c.mlp_avg / eff_latency).epsilon(0.10));
    }
}

TEST_CASE("RaL orders the generators by locality") {
    HierarchyConfig cfg;

    GenSpec p2 = default_spec(PatternLabel::P2); // small footprint, stays L1-resident
    p2.stride = 8;
    p2.period = 1024;
    MetricSet m2 = derive_metrics(simulate(generate_n(p2, 100000), cfg));

    GenSpec p1 = default_spec(PatternLabel::P1); // streaming with wide sliding reads
    p1.stride = 72;
    p1.access_size = 512;
    MetricSet m1 = derive_metrics(simulate(generate_n(p1, 100000), cfg));

    GenSpec p4 = default_spec(PatternLabel::P4); // huge-footprint random
    p4.footprint = uint64_t{1} << 30;
    MetricSet m4 = derive_metrics(simulate(generate_n(p4, 200000), cfg));

    CHECK(m2.ral > m1.ral);
    CHECK(m1.ral > m4.ral);
    CHECK(m1.prefetch_request_ratio > m4.prefetch_request_ratio);
}
