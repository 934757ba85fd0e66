#include "patmap/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "patmap/errors.hpp"
#include "patmap/rng.hpp"

namespace patmap {

namespace {

// Signed difference with two's-complement wrap; valid while true distances
// stay below 2^63, which holds for any trace a generator or real program emits.
int64_t signed_diff(uint64_t to, uint64_t from) { return static_cast<int64_t>(to - from); }

int sign_of(int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

double median_inplace(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    return 0.5 * (v[mid - 1] + hi);
}

struct Segment {
    size_t begin; // inclusive, window-relative
    size_t end;   // exclusive
    size_t len() const { return end - begin; }
};

// Ordinary least-squares R^2 of addr vs. index over one segment. Segments of
// up to two records and zero-variance segments count as perfect lines.
double segment_r2(const Window& w, const Segment& s) {
    const size_t n = s.len();
    if (n <= 2) return 1.0;
    const uint64_t y0 = w[s.begin].addr;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i);
        const double y = static_cast<double>(signed_diff(w[s.begin + i].addr, y0));
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double nn = static_cast<double>(n);
    const double sst = syy - sy * sy / nn;
    if (sst <= 0.0) return 1.0; // constant address
    const double sxx_c = sxx - sx * sx / nn;
    const double sxy_c = sxy - sx * sy / nn;
    if (sxx_c <= 0.0) return 1.0;
    const double ssr = sxy_c * sxy_c / sxx_c;
    double r2 = ssr / sst;
    return std::clamp(r2, 0.0, 1.0);
}

// Theil-Sen style slope: median over pair slopes sampled within segments, with
// the sampling budget spread proportionally to segment length. Deterministic:
// the RNG is seeded from the window geometry only, never from addresses.
double robust_slope(const Window& w, const std::vector<Segment>& segments, size_t max_pairs) {
    size_t weight = 0;
    for (const Segment& s : segments)
        if (s.len() >= 2) weight += s.len();
    if (weight == 0) return 0.0;

    const size_t budget = std::min(max_pairs, 4 * weight);
    SplitMix64 rng(0x7061746d61702eULL ^ (static_cast<uint64_t>(w.start) << 20) ^ w.len);
    std::vector<double> slopes;
    slopes.reserve(budget + segments.size());
    for (const Segment& s : segments) {
        const size_t n = s.len();
        if (n < 2) continue;
        size_t quota = std::max<size_t>(1, budget * n / weight);
        for (size_t k = 0; k < quota; ++k) {
            size_t i = static_cast<size_t>(rng.next_below(n));
            size_t j = static_cast<size_t>(rng.next_below(n - 1));
            if (j >= i) ++j; // distinct pair
            if (i > j) std::swap(i, j);
            const double dy =
                static_cast<double>(signed_diff(w[s.begin + j].addr, w[s.begin + i].addr));
            slopes.push_back(dy / static_cast<double>(j - i));
        }
    }
    return median_inplace(slopes);
}

} // namespace

std::string to_string(Periodicity p) {
    switch (p) {
        case Periodicity::Aperiodic: return "aperiodic";
        case Periodicity::Fixed: return "fixed";
        case Periodicity::Variable: return "variable";
    }
    return "?";
}

void ClassifierConfig::validate() const {
    if (c == 0 || c >= d) throw ParamError("classifier config requires 0 < c < d");
    if (r2_line <= 0.0 || r2_line >= 1.0) throw ParamError("r2_line must be in (0,1)");
    if (cv_fixed <= 0.0 || cv_fixed >= 1.0) throw ParamError("cv_fixed must be in (0,1)");
    if (slope_hi <= 0.0) throw ParamError("slope_hi must be > 0");
    if (reset_factor <= 0.0) throw ParamError("reset_factor must be > 0");
    if (min_window < 2) throw ParamError("min_window must be >= 2");
}

void PatternMix::validate() const {
    double sum = 0.0;
    for (double v : weights) {
        if (v < 0.0) throw ParamError("pattern mix: negative weight");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ParamError("pattern mix: weights sum to " + std::to_string(sum));
}

PatternLabel PatternMix::dominant() const {
    size_t best = 0;
    for (size_t i = 1; i < kPatternCount; ++i)
        if (weights[i] > weights[best]) best = i;
    return static_cast<PatternLabel>(best);
}

PatternFeatures extract_features(const Window& w, const ClassifierConfig& cfg) {
    cfg.validate();
    if (w.len < cfg.min_window)
        throw ParamError("window of " + std::to_string(w.len) + " records is below min_window " +
                         std::to_string(cfg.min_window));

    const size_t n = w.len;
    PatternFeatures f;

    // Robust trend and stride scale from the nonzero address deltas.
    std::vector<double> nonzero;
    nonzero.reserve(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        const int64_t d = signed_diff(w[i + 1].addr, w[i].addr);
        if (d != 0) nonzero.push_back(static_cast<double>(d));
    }
    if (nonzero.empty()) {
        // Constant address: a zero-slope line.
        f.slope_k = 0.0;
        f.linearity_r2 = 1.0;
        f.periodic = Periodicity::Aperiodic;
        return f;
    }
    std::vector<double> tmp = nonzero;
    const int trend = sign_of(static_cast<int64_t>(std::round(median_inplace(tmp))));
    tmp = nonzero;
    for (double& v : tmp) v = std::abs(v);
    const double stride_est = median_inplace(tmp);

    // A reset is a counter-trend jump much larger than the stride scale.
    std::vector<size_t> resets; // index i: boundary between records i and i+1
    if (trend != 0) {
        const double cutoff = cfg.reset_factor * stride_est;
        for (size_t i = 0; i + 1 < n; ++i) {
            const int64_t d = signed_diff(w[i + 1].addr, w[i].addr);
            if (sign_of(d) == -trend && std::abs(static_cast<double>(d)) > cutoff)
                resets.push_back(i);
        }
    }
    f.reset_count = resets.size();

    std::vector<Segment> segments;
    if (f.reset_count >= 2) {
        size_t begin = 0;
        for (size_t r : resets) {
            segments.push_back({begin, r + 1});
            begin = r + 1;
        }
        segments.push_back({begin, n});

        // Interior segments are complete periods; the first and last may be
        // clipped by the window edges.
        std::vector<double> lengths;
        lengths.reserve(f.reset_count - 1);
        for (size_t s = 1; s + 1 < segments.size(); ++s)
            lengths.push_back(static_cast<double>(segments[s].len()));
        const double mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) /
                            static_cast<double>(lengths.size());
        double var = 0.0;
        for (double l : lengths) var += (l - mean) * (l - mean);
        var /= static_cast<double>(lengths.size());
        const double cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
        f.period_mean = mean;
        f.period_cv = cv;
        f.periodic = cv <= cfg.cv_fixed ? Periodicity::Fixed : Periodicity::Variable;
    } else {
        segments.push_back({0, n}); // aperiodic: fit globally
        f.periodic = Periodicity::Aperiodic;
    }

    f.slope_k = robust_slope(w, segments, cfg.max_slope_pairs);

    double r2_weighted = 0.0;
    size_t r2_weight = 0;
    for (const Segment& s : segments) {
        r2_weighted += segment_r2(w, s) * static_cast<double>(s.len());
        r2_weight += s.len();
    }
    f.linearity_r2 = r2_weight ? r2_weighted / static_cast<double>(r2_weight) : 1.0;
    return f;
}

PatternLabel classify_window(const PatternFeatures& f, const ClassifierConfig& cfg) {
    const bool low_slope = std::abs(f.slope_k) <= cfg.slope_hi;
    switch (f.periodic) {
        case Periodicity::Aperiodic:
            if (f.linearity_r2 < cfg.r2_line) return PatternLabel::P4;
            return low_slope ? PatternLabel::P1 : PatternLabel::P3;
        case Periodicity::Fixed:
            return low_slope ? PatternLabel::P2 : PatternLabel::P6;
        case Periodicity::Variable:
            // High-slope variable-period collapses into random access.
            return low_slope ? PatternLabel::P5 : PatternLabel::P4;
    }
    return PatternLabel::P4; // unreachable
}

PatternMix decompose_trace(const Trace& t, const ClassifierConfig& cfg, size_t window_len) {
    cfg.validate();
    if (t.size() < cfg.min_window)
        throw ParamError("trace of " + std::to_string(t.size()) +
                         " records is below min_window " + std::to_string(cfg.min_window));
    const size_t wl = std::min(window_len, t.size());
    const auto windows = window_trace(t, wl, wl, cfg.min_window);

    std::array<uint64_t, kPatternCount> counts{};
    for (const Window& w : windows) {
        const PatternLabel label = classify_window(extract_features(w, cfg), cfg);
        counts[static_cast<size_t>(label)] += w.len;
    }
    PatternMix mix;
    const double total = static_cast<double>(t.size());
    for (size_t i = 0; i < kPatternCount; ++i)
        mix.weights[i] = static_cast<double>(counts[i]) / total;
    return mix;
}

PatternMix aggregate_suite(const std::vector<PatternMix>& mixes) {
    if (mixes.empty()) throw ParamError("aggregate_suite: empty list");
    PatternMix out;
    for (const PatternMix& m : mixes) {
        m.validate();
        for (size_t i = 0; i < kPatternCount; ++i) out.weights[i] += m.weights[i];
    }
    double sum = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
    for (double& v : out.weights) v /= sum;
    return out;
}

} // namespace patmap
