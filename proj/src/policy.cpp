#include "patmap/policy.hpp"

#include <algorithm>
#include <array>

#include "patmap/errors.hpp"

namespace patmap {

std::string to_string(PagePolicy p) { return p == PagePolicy::Open ? "open" : "close"; }

std::string to_string(FetchGranularity g) {
    return g == FetchGranularity::Coarse ? "coarse" : "fine";
}

std::string to_string(PrefetchMode m) {
    switch (m) {
        case PrefetchMode::Stream: return "stream";
        case PrefetchMode::Off: return "off";
        case PrefetchMode::PeriodAware: return "period-aware";
    }
    return "?";
}

std::string CacheLevelSet::to_string() const {
    std::string s;
    if (l1) s += "L1";
    if (l2) s += s.empty() ? "L2" : "+L2";
    if (l3) s += s.empty() ? "L3" : "+L3";
    return s;
}

namespace {

std::array<PolicyRecommendation, kPatternCount> build_table() {
    std::array<PolicyRecommendation, kPatternCount> t;

    auto& p1 = t[0];
    p1 = {PagePolicy::Open, FetchGranularity::Coarse, {true, true, true}, PrefetchMode::Stream, {}};
    p1.rationale = {
        "[policy:P1.page] low slope keeps successive accesses in the same DRAM row, so open-page wins",
        "[policy:P1.fetch] high spatial locality makes coarse-grained fetch pay off",
        "[policy:P1.prefetch] a straight aperiodic line is the ideal stream-prefetcher input",
    };

    auto& p2 = t[1];
    p2 = {PagePolicy::Open, FetchGranularity::Coarse, {true, true, true}, PrefetchMode::Stream, {}};
    p2.rationale = {
        "[policy:P2.cache] a short fixed period means the working set fits and reuses across sweeps",
        "[policy:P2.fetch] low slope favors caching and coarse-grained fetch",
        "[policy:P2.prefetch] the in-period stride is constant and short, a stream prefetcher tracks it",
    };

    auto& p3 = t[2];
    p3 = {PagePolicy::Close, FetchGranularity::Fine, {true, true, true}, PrefetchMode::Stream, {}};
    p3.rationale = {
        "[policy:P3.page] high slope leaves DRAM rows quickly, so close-page wins",
        "[policy:P3.fetch] fine-grained fetch cuts the bandwidth wasted on untouched line tails",
        "[policy:P3.prefetch] the figure is still a straight line, so prefetching helps",
    };

    auto& p4 = t[3];
    p4 = {PagePolicy::Close, FetchGranularity::Fine, {true, false, false}, PrefetchMode::Off, {}};
    p4.rationale = {
        "[policy:P4.cache] data is read then written immediately and rarely reused; keep it in L1 "
        "only, allocating in L2/L3 just flushes peers",
        "[policy:P4.page] random addresses have no row locality, close-page wins",
        "[policy:P4.prefetch] no stream exists to train on; prefetching only pollutes",
    };

    auto& p5 = t[4];
    p5 = {PagePolicy::Open, FetchGranularity::Coarse, {true, true, true}, PrefetchMode::PeriodAware, {}};
    p5.rationale = {
        "[policy:P5.cache] low slope with growing sweeps still reuses the sweep prefix heavily",
        "[policy:P5.prefetch] the period varies, so the prefetcher must re-arm on each reset "
        "instead of assuming a fixed stream length",
    };

    auto& p6 = t[5];
    p6 = {PagePolicy::Close, FetchGranularity::Fine, {false, false, true}, PrefetchMode::Stream, {}};
    p6.rationale = {
        "[policy:P6.cache] the working set grows too sharply for L1/L2; allocate in the LLC where "
        "a fixed period can still be captured",
        "[policy:P6.fetch] very large strides touch a sliver of each line, fetch fine-grained",
        "[policy:P6.page] large strides leave rows immediately, close-page wins",
    };

    return t;
}

const std::array<PolicyRecommendation, kPatternCount>& table() {
    static const auto t = build_table();
    return t;
}

} // namespace

const PolicyRecommendation& policy_for(PatternLabel label) {
    return table()[static_cast<size_t>(label)];
}

Advice recommend(const PatternMix& mix) {
    mix.validate();
    Advice advice;
    for (PatternLabel l : kAllPatterns) advice.per_pattern.emplace(l, policy_for(l));

    advice.dominant_label = mix.dominant();
    advice.dominant_weight = mix[advice.dominant_label];
    double runner_up = 0.0;
    for (PatternLabel l : kAllPatterns)
        if (l != advice.dominant_label) runner_up = std::max(runner_up, mix[l]);
    advice.margin = advice.dominant_weight - runner_up;
    advice.ambiguous = advice.margin < 0.1;
    return advice;
}

} // namespace patmap
