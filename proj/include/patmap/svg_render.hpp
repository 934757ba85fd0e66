#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "patmap/ptmap.hpp"
#include "patmap/trace.hpp"

namespace patmap {

struct RenderSpec {
    int width = 960;
    int height = 600;
    size_t max_points = 20000; // downsample budget
    bool log_x = false;
    bool log_y = false;
    std::string title;

    void validate() const; // throws ParamError
};

// (seq, addr) scatter of the trace, uniformly downsampled to max_points with
// the first and last records always kept. Output bytes are a pure function of
// the inputs.
std::string render_pattern_figure(const Trace& t, const RenderSpec& spec);

// Log-log scatter with one color per suite, crosses at the suite centers and
// dashed indifference curves; the legend maps colors to suites.
std::string render_ptmap(const std::vector<PtMapPoint>& points,
                         const std::map<std::string, PtMapPoint>& centers,
                         const std::vector<std::pair<double, std::vector<std::pair<double, double>>>>& curves,
                         const RenderSpec& spec);

} // namespace patmap
