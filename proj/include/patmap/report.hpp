#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "patmap/classifier.hpp"
#include "patmap/memsim.hpp"
#include "patmap/metrics.hpp"
#include "patmap/policy.hpp"
#include "patmap/ptmap.hpp"

// CSV interchange between the pipeline stages. Every writer is deterministic:
// fixed row order, fixed float formatting.
namespace patmap {

std::string counters_to_csv(const SimCounters& c);
SimCounters counters_from_csv(std::istream& in); // throws FormatError

std::string metrics_to_csv(const MetricSet& m);

// Per-window report: `window_start,window_len,label,slope,period_class` lines
// followed by a `MIX:,w1,..,w6` line with the record-weighted decomposition.
std::string classify_report_csv(const Trace& t, const ClassifierConfig& cfg, size_t window_len);

std::string mix_to_csv(const PatternMix& mix);
// Accepts `pattern,weight` rows or a classify report (its MIX: line is used).
PatternMix mix_from_csv(std::istream& in);

// `label,suite,l3_apc,ral` rows; a header row is skipped if present.
std::vector<PtMapPoint> points_from_csv(std::istream& in, const PtMapConfig& cfg = {});
std::string points_to_csv(const std::vector<PtMapPoint>& points);

std::string centers_to_csv(const std::map<std::string, PtMapPoint>& centers,
                           const PtMapConfig& cfg = {});
std::string order_to_text(const std::vector<std::string>& order);
std::string curves_to_csv(
    const std::vector<std::pair<double, std::vector<std::pair<double, double>>>>& curves);

std::string hotspots_to_csv(const std::vector<std::pair<std::string, double>>& hotspots);

std::string advice_to_csv(const PatternMix& mix, const Advice& advice);
std::string advice_to_text(const PatternMix& mix, const Advice& advice);

} // namespace patmap
