#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace patmap {

// A hotspot (or suite center) located by its off-core throughput and on-chip
// locality. Both coordinates live on log axes, so they must be positive;
// make_point floors non-positive values to epsilon and flags them.
struct PtMapPoint {
    std::string label;
    std::string suite;
    double l3_apc = 0.0;
    double ral = 0.0;
    bool floored = false;
};

struct PtMapConfig {
    double beta = 1.0;      // APC exponent weight in the level
    double epsilon = 1e-6;  // positivity floor

    void validate() const; // throws ParamError
};

PtMapPoint make_point(std::string label, std::string suite, double l3_apc, double ral,
                      const PtMapConfig& cfg = {});

// Scalar level of the unit-elasticity indifference curve through the point:
// log10(ral) + beta*log10(l3_apc). Points trade locality for throughput along
// a fixed level. Throws ParamError on non-positive coordinates.
double energy_level(const PtMapPoint& p, const PtMapConfig& cfg = {});

// Per-suite geometric mean of both coordinates (arithmetic mean in log
// domain). Throws ParamError when no points are given.
std::map<std::string, PtMapPoint> suite_centers(const std::vector<PtMapPoint>& points,
                                                const PtMapConfig& cfg = {});

// Suites sorted by ascending center energy; equal energies fall back to
// lexicographic order.
std::vector<std::string> order_suites(const std::map<std::string, PtMapPoint>& centers,
                                      const PtMapConfig& cfg = {});

// n (l3_apc, ral) samples of the curve at `level`, with l3_apc log-spaced over
// [lo, hi] inclusive.
std::vector<std::pair<double, double>> indifference_curve_points(double level, double lo,
                                                                 double hi, size_t n,
                                                                 const PtMapConfig& cfg = {});

} // namespace patmap
