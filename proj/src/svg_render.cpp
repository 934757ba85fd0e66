#include "patmap/svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "patmap/errors.hpp"

namespace patmap {

namespace {

// All numeric output goes through snprintf with fixed formats so documents are
// byte-stable across runs and platforms.
std::string fmt(double v, const char* f = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

constexpr int kMarginLeft = 76;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 34;
constexpr int kMarginBottom = 48;

struct Axis {
    double lo = 0.0, hi = 1.0; // data range (already log10'd for log axes)
    bool log = false;
    double px0 = 0.0, px1 = 1.0; // pixel range

    double to_px(double v) const {
        const double x = log ? std::log10(v) : v;
        return px0 + (x - lo) / (hi - lo) * (px1 - px0);
    }
};

// Expands [lo,hi] so it is never degenerate.
void pad_range(double& lo, double& hi) {
    if (hi <= lo) {
        const double pad = std::max(1.0, std::abs(lo) * 0.01);
        lo -= pad;
        hi += pad;
    }
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) { step = mag * mult; break; }
    }
    std::vector<double> ticks;
    const long long first = static_cast<long long>(std::ceil(lo / step));
    const long long last = static_cast<long long>(std::floor(hi / step + 1e-9));
    for (long long k = first; k <= last; ++k) ticks.push_back(static_cast<double>(k) * step);
    return ticks;
}

std::vector<double> decade_ticks(double log_lo, double log_hi) {
    std::vector<double> ticks;
    const long long first = static_cast<long long>(std::ceil(log_lo - 1e-9));
    const long long last = static_cast<long long>(std::floor(log_hi + 1e-9));
    long long stride = 1;
    if (last - first > 12) stride = (last - first + 11) / 12;
    for (long long e = first; e <= last; e += stride)
        ticks.push_back(std::pow(10.0, static_cast<double>(e)));
    if (ticks.empty()) ticks = {std::pow(10.0, log_lo), std::pow(10.0, log_hi)};
    return ticks;
}

void open_document(std::string& svg, const RenderSpec& spec) {
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
           "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
           std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        svg += "<text x=\"" + fmt(spec.width / 2.0, "%.1f") +
               "\" y=\"20\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">" +
               xml_escape(spec.title) + "</text>\n";
}

void draw_axes(std::string& svg, const Axis& x, const Axis& y,
               const std::string& x_label, const std::string& y_label) {
    const double left = x.px0, right = x.px1, top = y.px1, bottom = y.px0;
    svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(right - left) +
           "\" height=\"" + fmt(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";

    const auto ticks_x = x.log ? decade_ticks(x.lo, x.hi) : linear_ticks(x.lo, x.hi);
    for (double v : ticks_x) {
        const double px = x.to_px(v);
        svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(bottom) + "\" x2=\"" + fmt(px) +
               "\" y2=\"" + fmt(bottom + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(bottom + 18) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               fmt(v, "%.6g") + "</text>\n";
    }
    const auto ticks_y = y.log ? decade_ticks(y.lo, y.hi) : linear_ticks(y.lo, y.hi);
    for (double v : ticks_y) {
        const double py = y.to_px(v);
        svg += "<line x1=\"" + fmt(left - 5) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(left) +
               "\" y2=\"" + fmt(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(py + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               fmt(v, "%.6g") + "</text>\n";
    }
    svg += "<text x=\"" + fmt((left + right) / 2) + "\" y=\"" + fmt(bottom + 36) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
           xml_escape(x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt((top + bottom) / 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt((top + bottom) / 2) + ")\">" + xml_escape(y_label) + "</text>\n";
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

} // namespace

void RenderSpec::validate() const {
    if (width <= 0 || height <= 0) throw ParamError("render: dimensions must be positive");
    if (max_points < 100) throw ParamError("render: max_points must be >= 100");
}

std::string render_pattern_figure(const Trace& t, const RenderSpec& spec) {
    spec.validate();
    if (t.empty()) throw ParamError("render: empty trace");

    // Uniform downsample keeping first and last records.
    const size_t n = t.size();
    std::vector<size_t> idx;
    if (n <= spec.max_points) {
        idx.resize(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
    } else {
        idx.resize(spec.max_points);
        for (size_t i = 0; i < spec.max_points; ++i)
            idx[i] = static_cast<size_t>(static_cast<double>(i) * static_cast<double>(n - 1) /
                                         static_cast<double>(spec.max_points - 1));
        idx.back() = n - 1;
    }

    double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
    for (size_t i : idx) {
        const double a = static_cast<double>(t.records[i].addr);
        y_lo = std::min(y_lo, a);
        y_hi = std::max(y_hi, a);
    }
    pad_range(y_lo, y_hi);
    double x_lo = 0.0, x_hi = static_cast<double>(n - 1);
    pad_range(x_lo, x_hi);

    Axis x{x_lo, x_hi, false, static_cast<double>(kMarginLeft),
           static_cast<double>(spec.width - kMarginRight)};
    Axis y{y_lo, y_hi, false, static_cast<double>(spec.height - kMarginBottom),
           static_cast<double>(kMarginTop)};

    std::string svg;
    svg.reserve(idx.size() * 48 + 4096);
    open_document(svg, spec);
    draw_axes(svg, x, y, "access sequence", "address (bytes)");
    for (size_t i : idx) {
        const TraceRecord& r = t.records[i];
        svg += "<circle cx=\"" + fmt(x.to_px(static_cast<double>(r.seq))) + "\" cy=\"" +
               fmt(y.to_px(static_cast<double>(r.addr))) + "\" r=\"1.5\" fill=\"" +
               (r.op == Op::Write ? "#d62728" : "#1f77b4") + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_ptmap(const std::vector<PtMapPoint>& points,
                         const std::map<std::string, PtMapPoint>& centers,
                         const std::vector<std::pair<double, std::vector<std::pair<double, double>>>>& curves,
                         const RenderSpec& spec) {
    spec.validate();
    if (points.empty()) throw ParamError("render: ptmap needs at least one point");

    // Raw inputs may still carry non-positive coordinates; apply the same
    // epsilon floor the map uses so log mapping stays finite.
    std::vector<PtMapPoint> pts = points;
    for (PtMapPoint& p : pts) {
        if (!(p.l3_apc > 0.0)) { p.l3_apc = 1e-6; p.floored = true; }
        if (!(p.ral > 0.0)) { p.ral = 1e-6; p.floored = true; }
    }

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    auto widen = [&](double apc, double ral) {
        x_lo = std::min(x_lo, apc);
        x_hi = std::max(x_hi, apc);
        y_lo = std::min(y_lo, ral);
        y_hi = std::max(y_hi, ral);
    };
    for (const PtMapPoint& p : pts) widen(p.l3_apc, p.ral);
    for (const auto& [suite, c] : centers) widen(c.l3_apc, c.ral);

    // Half a decade of margin around the data on both log axes.
    double lx_lo = std::log10(x_lo) - 0.5, lx_hi = std::log10(x_hi) + 0.5;
    double ly_lo = std::log10(y_lo) - 0.5, ly_hi = std::log10(y_hi) + 0.5;

    Axis x{lx_lo, lx_hi, true, static_cast<double>(kMarginLeft),
           static_cast<double>(spec.width - kMarginRight)};
    Axis y{ly_lo, ly_hi, true, static_cast<double>(spec.height - kMarginBottom),
           static_cast<double>(kMarginTop)};

    // Deterministic suite -> color assignment by sorted suite name.
    std::map<std::string, const char*> color;
    {
        size_t i = 0;
        for (const PtMapPoint& p : pts) color.emplace(p.suite, nullptr);
        for (auto& [suite, col] : color) col = kPalette[i++ % kPaletteSize];
    }

    std::string svg;
    svg.reserve(pts.size() * 48 + 8192);
    open_document(svg, spec);
    draw_axes(svg, x, y, "L3 APC", "RaL");

    auto in_y_range = [&](double ral) {
        const double ly = std::log10(ral);
        return ly >= ly_lo && ly <= ly_hi;
    };

    for (const auto& [level, pts] : curves) {
        std::string poly;
        for (const auto& [apc, ral] : pts) {
            if (!(apc > 0.0) || !(ral > 0.0) || !in_y_range(ral)) continue;
            poly += fmt(x.to_px(apc)) + "," + fmt(y.to_px(ral)) + " ";
        }
        if (poly.empty()) continue;
        svg += "<polyline points=\"" + poly +
               "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
    }

    for (const PtMapPoint& p : pts) {
        svg += "<circle cx=\"" + fmt(x.to_px(p.l3_apc)) + "\" cy=\"" + fmt(y.to_px(p.ral)) +
               "\" r=\"3.5\" fill=\"" + color[p.suite] + "\" fill-opacity=\"0.8\"/>\n";
    }
    for (const auto& [suite, c] : centers) {
        const double px = x.to_px(c.l3_apc), py = y.to_px(c.ral);
        const char* col = color.count(suite) ? color[suite] : "#000000";
        svg += "<path d=\"M " + fmt(px - 6) + " " + fmt(py) + " L " + fmt(px + 6) + " " + fmt(py) +
               " M " + fmt(px) + " " + fmt(py - 6) + " L " + fmt(px) + " " + fmt(py + 6) +
               "\" stroke=\"" + col + "\" stroke-width=\"2.5\"/>\n";
    }

    // Legend, one row per suite.
    double ly = kMarginTop + 12.0;
    const double lx = spec.width - kMarginRight - 150.0;
    for (const auto& [suite, col] : color) {
        svg += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly - 8) +
               "\" width=\"10\" height=\"10\" fill=\"" + col + "\"/>\n";
        svg += "<text x=\"" + fmt(lx + 16) + "\" y=\"" + fmt(ly + 1) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(suite) + "</text>\n";
        ly += 16.0;
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace patmap
