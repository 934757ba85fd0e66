#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace patmap {

struct ProfileRecord {
    std::string segment_id;
    double t = 0.0; // seconds consumed by the code segment
    int n = 1;      // thread count
    std::string source_loc;
};

struct ProgramProfile {
    std::vector<ProfileRecord> records;
    double t_s = 0.0;           // sequential-section seconds
    double t_p = 0.0;           // parallel-section seconds
    double threshold_pct = 5.0; // hotspot cutoff, in percent

    void validate() const; // throws ParamError
};

// t*n / (t_s + n*t_p). Throws ParamError when the denominator is zero.
double importance(const ProfileRecord& r, const ProgramProfile& p);

// Records whose importance strictly exceeds threshold_pct percent, sorted by
// importance descending, ties broken by segment_id ascending.
std::vector<std::pair<std::string, double>> select_hotspots(const ProgramProfile& p);

// Text profile: a header line `TS=<sec> TP=<sec> DELTA=<pct>` followed by one
// `segment_id,t_seconds,n` line per record.
ProgramProfile read_profile(std::istream& in);
ProgramProfile read_profile_file(const std::string& path);

} // namespace patmap
