#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "patmap/pattern.hpp"
#include "patmap/trace.hpp"

namespace patmap {

enum class Periodicity : uint8_t { Aperiodic, Fixed, Variable };

std::string to_string(Periodicity p);

// Geometry of an (access index, address) window: how fast the touched range
// grows per access, how line-like the per-period fits are, and whether the
// address resets periodically and with what regularity.
struct PatternFeatures {
    double slope_k = 0.0;      // bytes per access, signed; classify on |slope_k|
    double linearity_r2 = 0.0; // access-weighted R^2 of per-segment line fits, [0,1]
    Periodicity periodic = Periodicity::Aperiodic;
    size_t reset_count = 0;
    std::optional<double> period_mean; // set only when reset_count >= 2
    std::optional<double> period_cv;   // coefficient of variation of period lengths
};

struct ClassifierConfig {
    uint64_t c = kDefaultLineSize;            // cache line size, bytes
    uint64_t d = kDefaultTriggerDistance;     // prefetch trigger threshold distance, bytes
    double r2_line = 0.95;      // below this an aperiodic window is not a line
    double cv_fixed = 0.10;     // max period-length CV still called a fixed period
    double slope_hi = static_cast<double>(kDefaultTriggerDistance); // low/high slope boundary
    double reset_factor = 4.0;  // a counter-trend drop > factor*stride estimate is a reset
    size_t min_window = kDefaultMinWindow;
    size_t max_slope_pairs = 10000; // Theil-Sen sampling budget per window

    void validate() const; // throws ParamError
};

// One weight per base pattern; weights are >= 0 and sum to 1 within 1e-9.
struct PatternMix {
    std::array<double, kPatternCount> weights{};

    double& operator[](PatternLabel l) { return weights[static_cast<size_t>(l)]; }
    double operator[](PatternLabel l) const { return weights[static_cast<size_t>(l)]; }

    void validate() const; // throws ParamError
    // Argmax weight; ties resolve to the lower label.
    PatternLabel dominant() const;
};

PatternFeatures extract_features(const Window& w, const ClassifierConfig& cfg);

// Total function over feature space: every window gets exactly one label.
//   aperiodic & r2 < r2_line -> P4        aperiodic line -> P1 / P3 by slope
//   fixed period             -> P2 / P6   variable period -> P5 / P4 by slope
PatternLabel classify_window(const PatternFeatures& f, const ClassifierConfig& cfg);

// Non-overlapping windows of window_len (stride = window_len); the weight of a
// label is the fraction of trace records falling in windows with that label.
PatternMix decompose_trace(const Trace& t, const ClassifierConfig& cfg, size_t window_len);

// Unweighted mean of the mixes, renormalized.
PatternMix aggregate_suite(const std::vector<PatternMix>& mixes);

} // namespace patmap
