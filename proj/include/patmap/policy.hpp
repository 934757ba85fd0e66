#pragma once

#include <map>
#include <string>
#include <vector>

#include "patmap/classifier.hpp"
#include "patmap/pattern.hpp"

namespace patmap {

enum class PagePolicy : uint8_t { Open, Close };
enum class FetchGranularity : uint8_t { Coarse, Fine };
enum class PrefetchMode : uint8_t { Stream, Off, PeriodAware };

std::string to_string(PagePolicy p);
std::string to_string(FetchGranularity g);
std::string to_string(PrefetchMode m);

struct CacheLevelSet {
    bool l1 = false;
    bool l2 = false;
    bool l3 = false;

    bool any() const { return l1 || l2 || l3; }
    std::string to_string() const; // e.g. "L1+L2+L3" or "L3"
};

struct PolicyRecommendation {
    PagePolicy page_policy = PagePolicy::Open;
    FetchGranularity fetch_granularity = FetchGranularity::Coarse;
    CacheLevelSet cache_levels;
    PrefetchMode prefetch_mode = PrefetchMode::Stream;
    // Each entry carries a stable policy tag, e.g. "[policy:P4.cache] ...".
    std::vector<std::string> rationale;
};

struct Advice {
    std::map<PatternLabel, PolicyRecommendation> per_pattern; // all six labels
    PatternLabel dominant_label = PatternLabel::P1;
    double dominant_weight = 0.0;
    double margin = 0.0;    // dominant weight minus runner-up weight
    bool ambiguous = false; // margin < 0.1
};

// The static per-pattern policy table.
const PolicyRecommendation& policy_for(PatternLabel label);

// Full table plus the recommendation for the argmax-weight label (ties go to
// the lower label). Throws ParamError when the mix is invalid.
Advice recommend(const PatternMix& mix);

} // namespace patmap
