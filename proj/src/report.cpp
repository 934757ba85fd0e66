#include "patmap/report.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <sstream>

#include "patmap/errors.hpp"

namespace patmap {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string num(uint64_t v) { return std::to_string(v); }

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_num(const std::string& s, const std::string& what, size_t line_no) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
    }
}

} // namespace

std::string counters_to_csv(const SimCounters& c) {
    std::string out = "counter,value\n";
    auto row = [&](const char* name, auto value) {
        out += name;
        out += ',';
        out += num(value);
        out += '\n';
    };
    row("l1_hits", c.l1.hits);
    row("l1_misses", c.l1.misses);
    row("l1_demand_requests", c.l1.demand_requests);
    row("l1_prefetch_requests", c.l1.prefetch_requests);
    row("l2_hits", c.l2.hits);
    row("l2_misses", c.l2.misses);
    row("l2_demand_requests", c.l2.demand_requests);
    row("l2_prefetch_requests", c.l2.prefetch_requests);
    row("l3_hits", c.l3.hits);
    row("l3_misses", c.l3.misses);
    row("l3_demand_requests", c.l3.demand_requests);
    row("l3_prefetch_requests", c.l3.prefetch_requests);
    row("offchip_movements", c.offchip_movements);
    row("trace_records", c.trace_records);
    row("accesses", c.accesses);
    row("total_cycles", c.total_cycles);
    row("stall_cycles", c.stall_cycles);
    row("mem_active_cycles", c.mem_active_cycles);
    row("l2_beyond_active_cycles", c.l2_beyond_active_cycles);
    row("l3_active_cycles", c.l3_active_cycles);
    row("l3_accesses_completed", c.l3_accesses_completed);
    row("l3_service_cycles", c.l3_service_cycles);
    row("mlp_avg", c.mlp_avg);
    return out;
}

SimCounters counters_from_csv(std::istream& in) {
    std::map<std::string, double> kv;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv(line);
        if (fields.size() != 2)
            throw FormatError("counters line " + std::to_string(line_no) +
                              ": expected counter,value");
        if (fields[0] == "counter") continue; // header
        kv[fields[0]] = parse_num(fields[1], "counter value", line_no);
    }
    auto u64 = [&](const char* name) -> uint64_t {
        auto it = kv.find(name);
        if (it == kv.end()) throw FormatError(std::string("counters: missing ") + name);
        return static_cast<uint64_t>(it->second);
    };
    SimCounters c;
    c.l1 = {u64("l1_hits"), u64("l1_misses"), u64("l1_demand_requests"),
            u64("l1_prefetch_requests")};
    c.l2 = {u64("l2_hits"), u64("l2_misses"), u64("l2_demand_requests"),
            u64("l2_prefetch_requests")};
    c.l3 = {u64("l3_hits"), u64("l3_misses"), u64("l3_demand_requests"),
            u64("l3_prefetch_requests")};
    c.offchip_movements = u64("offchip_movements");
    c.trace_records = u64("trace_records");
    c.accesses = u64("accesses");
    c.total_cycles = u64("total_cycles");
    c.stall_cycles = u64("stall_cycles");
    c.mem_active_cycles = u64("mem_active_cycles");
    c.l2_beyond_active_cycles = u64("l2_beyond_active_cycles");
    c.l3_active_cycles = u64("l3_active_cycles");
    c.l3_accesses_completed = u64("l3_accesses_completed");
    c.l3_service_cycles = u64("l3_service_cycles");
    c.mlp_avg = kv.count("mlp_avg") ? kv["mlp_avg"] : 0.0;
    return c;
}

std::string metrics_to_csv(const MetricSet& m) {
    std::string out = "metric,value\n";
    out += "ral," + num(m.ral) + "\n";
    out += "l3_apc," + num(m.l3_apc) + "\n";
    out += "pipeline_stall_degree," + num(m.pipeline_stall_degree) + "\n";
    out += "l2_beyond_active_degree," + num(m.l2_beyond_active_degree) + "\n";
    out += "latency_non_hidden_degree," + num(m.latency_non_hidden_degree) + "\n";
    out += "prefetch_request_ratio," + num(m.prefetch_request_ratio) + "\n";
    out += "ipc_model," + num(m.ipc_model) + "\n";
    for (const std::string& g : m.guarded) out += "guarded," + g + "\n";
    return out;
}

std::string classify_report_csv(const Trace& t, const ClassifierConfig& cfg, size_t window_len) {
    if (t.size() < cfg.min_window)
        throw ParamError("trace of " + std::to_string(t.size()) +
                         " records is below min_window " + std::to_string(cfg.min_window));
    const size_t wl = window_len == 0 ? t.size() : std::min(window_len, t.size());
    std::string out = "window_start,window_len,label,slope,period_class\n";
    const auto windows = window_trace(t, wl, wl, cfg.min_window);
    std::array<uint64_t, kPatternCount> counts{};
    for (const Window& w : windows) {
        const PatternFeatures f = extract_features(w, cfg);
        const PatternLabel label = classify_window(f, cfg);
        counts[static_cast<size_t>(label)] += w.len;
        out += std::to_string(w.start) + "," + std::to_string(w.len) + "," + to_string(label) +
               "," + num(f.slope_k) + "," + to_string(f.periodic) + "\n";
    }
    out += "MIX:";
    const double total = static_cast<double>(t.size());
    for (size_t i = 0; i < kPatternCount; ++i)
        out += "," + num(static_cast<double>(counts[i]) / total);
    out += "\n";
    return out;
}

std::string mix_to_csv(const PatternMix& mix) {
    std::string out = "pattern,weight\n";
    for (PatternLabel l : kAllPatterns) out += to_string(l) + "," + num(mix[l]) + "\n";
    return out;
}

PatternMix mix_from_csv(std::istream& in) {
    PatternMix mix;
    bool any = false;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv(line);
        if (fields[0] == "MIX:") {
            if (fields.size() != kPatternCount + 1)
                throw FormatError("MIX: line must carry six weights");
            for (size_t i = 0; i < kPatternCount; ++i)
                mix.weights[i] = parse_num(fields[i + 1], "weight", line_no);
            any = true;
            continue;
        }
        if (fields[0] == "pattern" || fields[0] == "window_start") continue; // headers
        if (fields.size() == 5) continue;                                    // per-window rows
        if (fields.size() != 2)
            throw FormatError("mix line " + std::to_string(line_no) + ": expected pattern,weight");
        try {
            mix[parse_pattern_label(fields[0])] = parse_num(fields[1], "weight", line_no);
        } catch (const ParamError& e) {
            throw FormatError(e.what());
        }
        any = true;
    }
    if (!any) throw FormatError("mix: no weights found");
    try {
        mix.validate();
    } catch (const ParamError& e) {
        throw FormatError(std::string("mix: ") + e.what());
    }
    return mix;
}

std::vector<PtMapPoint> points_from_csv(std::istream& in, const PtMapConfig& cfg) {
    std::vector<PtMapPoint> points;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv(line);
        if (fields.size() != 4)
            throw FormatError("points line " + std::to_string(line_no) +
                              ": expected label,suite,l3_apc,ral");
        if (fields[0] == "label") continue; // header
        points.push_back(make_point(fields[0], fields[1],
                                    parse_num(fields[2], "l3_apc", line_no),
                                    parse_num(fields[3], "ral", line_no), cfg));
    }
    if (points.empty()) throw FormatError("points: no rows");
    return points;
}

std::string points_to_csv(const std::vector<PtMapPoint>& points) {
    std::string out = "label,suite,l3_apc,ral\n";
    for (const PtMapPoint& p : points)
        out += p.label + "," + p.suite + "," + num(p.l3_apc) + "," + num(p.ral) + "\n";
    return out;
}

std::string centers_to_csv(const std::map<std::string, PtMapPoint>& centers,
                           const PtMapConfig& cfg) {
    std::string out = "suite,l3_apc,ral,energy_level\n";
    for (const auto& [suite, c] : centers)
        out += suite + "," + num(c.l3_apc) + "," + num(c.ral) + "," + num(energy_level(c, cfg)) +
               "\n";
    return out;
}

std::string order_to_text(const std::vector<std::string>& order) {
    std::string out;
    for (const std::string& suite : order) out += suite + "\n";
    return out;
}

std::string curves_to_csv(
    const std::vector<std::pair<double, std::vector<std::pair<double, double>>>>& curves) {
    std::string out = "level,l3_apc,ral\n";
    for (const auto& [level, pts] : curves)
        for (const auto& [apc, ral] : pts)
            out += num(level) + "," + num(apc) + "," + num(ral) + "\n";
    return out;
}

std::string hotspots_to_csv(const std::vector<std::pair<std::string, double>>& hotspots) {
    std::string out = "segment_id,importance\n";
    for (const auto& [id, imp] : hotspots) out += id + "," + num(imp) + "\n";
    return out;
}

std::string advice_to_csv(const PatternMix& mix, const Advice& advice) {
    std::string out = "pattern,weight,page_policy,fetch_granularity,cache_levels,prefetch_mode,dominant\n";
    for (PatternLabel l : kAllPatterns) {
        const PolicyRecommendation& r = advice.per_pattern.at(l);
        out += to_string(l) + "," + num(mix[l]) + "," + to_string(r.page_policy) + "," +
               to_string(r.fetch_granularity) + "," + r.cache_levels.to_string() + "," +
               to_string(r.prefetch_mode) + "," + (l == advice.dominant_label ? "1" : "0") + "\n";
    }
    out += "# dominant=" + to_string(advice.dominant_label) + " margin=" + num(advice.margin) +
           " ambiguous=" + (advice.ambiguous ? "1" : "0") + "\n";
    return out;
}

std::string advice_to_text(const PatternMix& mix, const Advice& advice) {
    std::ostringstream out;
    out << "dominant pattern: " << to_string(advice.dominant_label) << " (weight "
        << num(advice.dominant_weight) << ", margin " << num(advice.margin) << ")\n";
    if (advice.ambiguous)
        out << "note: dominance margin < 0.1 - the mix is ambiguous, consider every entry below\n";
    for (PatternLabel l : kAllPatterns) {
        const PolicyRecommendation& r = advice.per_pattern.at(l);
        out << "\n" << to_string(l) << " (weight " << num(mix[l]) << ")"
            << (l == advice.dominant_label ? "  <- dominant" : "") << "\n";
        out << "  page policy:       " << to_string(r.page_policy) << "\n";
        out << "  fetch granularity: " << to_string(r.fetch_granularity) << "\n";
        out << "  cache levels:      " << r.cache_levels.to_string() << "\n";
        out << "  prefetch mode:     " << to_string(r.prefetch_mode) << "\n";
        for (const std::string& why : r.rationale) out << "    " << why << "\n";
    }
    return out.str();
}

} // namespace patmap
