#include "patmap/ptmap.hpp"

#include <algorithm>
#include <cmath>

#include "patmap/errors.hpp"

namespace patmap {

void PtMapConfig::validate() const {
    if (beta <= 0.0) throw ParamError("ptmap: beta must be > 0");
    if (epsilon <= 0.0) throw ParamError("ptmap: epsilon must be > 0");
}

PtMapPoint make_point(std::string label, std::string suite, double l3_apc, double ral,
                      const PtMapConfig& cfg) {
    cfg.validate();
    PtMapPoint p;
    p.label = std::move(label);
    p.suite = std::move(suite);
    p.l3_apc = l3_apc;
    p.ral = ral;
    if (!(p.l3_apc > 0.0)) { p.l3_apc = cfg.epsilon; p.floored = true; }
    if (!(p.ral > 0.0)) { p.ral = cfg.epsilon; p.floored = true; }
    return p;
}

double energy_level(const PtMapPoint& p, const PtMapConfig& cfg) {
    cfg.validate();
    if (!(p.ral > 0.0) || !(p.l3_apc > 0.0))
        throw ParamError("energy_level: coordinates must be positive (point '" + p.label + "')");
    return std::log10(p.ral) + cfg.beta * std::log10(p.l3_apc);
}

std::map<std::string, PtMapPoint> suite_centers(const std::vector<PtMapPoint>& points,
                                                const PtMapConfig& cfg) {
    cfg.validate();
    if (points.empty()) throw ParamError("suite_centers: no points");
    struct Acc {
        double log_apc = 0.0;
        double log_ral = 0.0;
        size_t count = 0;
    };
    std::map<std::string, Acc> acc;
    for (const PtMapPoint& p : points) {
        if (!(p.ral > 0.0) || !(p.l3_apc > 0.0))
            throw ParamError("suite_centers: non-positive coordinate (point '" + p.label + "')");
        Acc& a = acc[p.suite]; // register the suite even if every point is floored
        if (p.floored) continue;
        a.log_apc += std::log10(p.l3_apc);
        a.log_ral += std::log10(p.ral);
        a.count++;
    }
    for (const auto& [suite, a] : acc)
        if (a.count == 0)
            throw ParamError("suite_centers: suite '" + suite +
                             "' has only floored points, no usable center");
    std::map<std::string, PtMapPoint> centers;
    for (const auto& [suite, a] : acc) {
        PtMapPoint c;
        c.label = suite;
        c.suite = suite;
        c.l3_apc = std::pow(10.0, a.log_apc / static_cast<double>(a.count));
        c.ral = std::pow(10.0, a.log_ral / static_cast<double>(a.count));
        centers.emplace(suite, c);
    }
    return centers;
}

std::vector<std::string> order_suites(const std::map<std::string, PtMapPoint>& centers,
                                      const PtMapConfig& cfg) {
    std::vector<std::pair<double, std::string>> keyed;
    keyed.reserve(centers.size());
    for (const auto& [suite, center] : centers) keyed.emplace_back(energy_level(center, cfg), suite);
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<std::string> out;
    out.reserve(keyed.size());
    for (auto& [level, suite] : keyed) out.push_back(std::move(suite));
    return out;
}

std::vector<std::pair<double, double>> indifference_curve_points(double level, double lo,
                                                                 double hi, size_t n,
                                                                 const PtMapConfig& cfg) {
    cfg.validate();
    if (!(lo > 0.0) || !(lo < hi)) throw ParamError("curve range requires 0 < lo < hi");
    if (n < 2) throw ParamError("curve needs at least 2 points");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(n);
    const double log_lo = std::log10(lo);
    const double log_hi = std::log10(hi);
    for (size_t i = 0; i < n; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
        const double log_apc = log_lo + frac * (log_hi - log_lo);
        const double apc = std::pow(10.0, log_apc);
        const double ral = std::pow(10.0, level - cfg.beta * log_apc);
        pts.emplace_back(apc, ral);
    }
    return pts;
}

} // namespace patmap
