#include "patmap/profiler.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "patmap/errors.hpp"

namespace patmap {

void ProgramProfile::validate() const {
    if (t_s < 0 || t_p < 0) throw ParamError("profile: section times must be >= 0");
    if (t_s + t_p <= 0) throw ParamError("profile: t_s + t_p must be > 0");
    for (const ProfileRecord& r : records) {
        if (r.t < 0) throw ParamError("profile: segment time must be >= 0 (" + r.segment_id + ")");
        if (r.n < 1) throw ParamError("profile: thread count must be >= 1 (" + r.segment_id + ")");
    }
}

double importance(const ProfileRecord& r, const ProgramProfile& p) {
    const double denom = p.t_s + static_cast<double>(r.n) * p.t_p;
    if (denom == 0.0) throw ParamError("importance: t_s + n*t_p is zero");
    return r.t * static_cast<double>(r.n) / denom;
}

std::vector<std::pair<std::string, double>> select_hotspots(const ProgramProfile& p) {
    p.validate();
    const double cutoff = p.threshold_pct / 100.0;
    std::vector<std::pair<std::string, double>> out;
    for (const ProfileRecord& r : p.records) {
        const double imp = importance(r, p);
        if (imp > cutoff) out.emplace_back(r.segment_id, imp);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

ProgramProfile read_profile(std::istream& in) {
    ProgramProfile p;
    std::string line;
    size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            std::istringstream hs(line);
            std::string tok;
            bool ts = false, tp = false;
            while (hs >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos)
                    throw FormatError("profile header: expected KEY=value tokens");
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                try {
                    if (key == "TS") { p.t_s = std::stod(val); ts = true; }
                    else if (key == "TP") { p.t_p = std::stod(val); tp = true; }
                    else if (key == "DELTA") p.threshold_pct = std::stod(val);
                    else throw FormatError("profile header: unknown key " + key);
                } catch (const std::invalid_argument&) {
                    throw FormatError("profile header: bad number '" + val + "'");
                }
            }
            if (!ts || !tp) throw FormatError("profile header must set TS= and TP=");
            have_header = true;
            continue;
        }
        std::istringstream ls(line);
        std::string id, t_str, n_str;
        if (!std::getline(ls, id, ',') || !std::getline(ls, t_str, ',') || !std::getline(ls, n_str))
            throw FormatError("profile line " + std::to_string(line_no) +
                              ": expected segment_id,t_seconds,n");
        ProfileRecord r;
        r.segment_id = id;
        try {
            r.t = std::stod(t_str);
            r.n = std::stoi(n_str);
        } catch (const std::exception&) {
            throw FormatError("profile line " + std::to_string(line_no) + ": bad number");
        }
        p.records.push_back(std::move(r));
    }
    if (!have_header) throw FormatError("profile: missing TS=/TP= header line");
    try {
        p.validate();
    } catch (const ParamError& e) {
        throw FormatError(std::string("profile: ") + e.what());
    }
    return p;
}

ProgramProfile read_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open: " + path);
    return read_profile(in);
}

} // namespace patmap
