#include "patmap/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "patmap/errors.hpp"
#include "patmap/rng.hpp"

namespace patmap {

namespace {

constexpr uint64_t kMinP4Footprint = uint64_t{1} << 20;

void emit(Trace& t, uint64_t addr, Op op, uint32_t size) {
    t.records.push_back({t.records.size() ? t.records.back().seq + 1 : 0, addr, op, size});
}

// Emits one element access; Rmw produces the read/write pair. Returns the
// number of records appended.
uint64_t emit_elem(Trace& t, uint64_t addr, OpMode mode, uint32_t size, uint64_t budget) {
    if (budget == 0) return 0;
    switch (mode) {
        case OpMode::Read: emit(t, addr, Op::Read, size); return 1;
        case OpMode::Write: emit(t, addr, Op::Write, size); return 1;
        case OpMode::Rmw:
            emit(t, addr, Op::Read, size);
            if (budget == 1) return 1;
            emit(t, addr, Op::Write, size);
            return 2;
    }
    return 0;
}

uint64_t records_per_elem(OpMode mode) { return mode == OpMode::Rmw ? 2 : 1; }

} // namespace

void GenSpec::validate() const {
    if (access_size < 1 || access_size > kMaxAccessSize)
        throw ParamError("access_size out of range");
    switch (pattern) {
        case PatternLabel::P1:
        case PatternLabel::P5:
            if (stride <= kDefaultLineSize)
                throw ParamError(to_string(pattern) + " requires stride > " +
                                 std::to_string(kDefaultLineSize));
            break;
        case PatternLabel::P2:
            if (stride == 0 || stride >= kDefaultTriggerDistance)
                throw ParamError("P2 requires 0 < stride < " +
                                 std::to_string(kDefaultTriggerDistance));
            if (period < 1) throw ParamError("P2 requires period >= 1");
            break;
        case PatternLabel::P3:
            if (stride <= kDefaultTriggerDistance)
                throw ParamError("P3 requires stride > " +
                                 std::to_string(kDefaultTriggerDistance));
            break;
        case PatternLabel::P6:
            if (stride <= kDefaultTriggerDistance)
                throw ParamError("P6 requires stride > " +
                                 std::to_string(kDefaultTriggerDistance));
            if (period < 1) throw ParamError("P6 requires period >= 1");
            break;
        case PatternLabel::P4:
            if (footprint < kMinP4Footprint)
                throw ParamError("P4 requires footprint >= 2^20 bytes");
            break;
    }
}

GenSpec default_spec(PatternLabel pattern) {
    GenSpec s;
    s.pattern = pattern;
    switch (pattern) {
        case PatternLabel::P1: s.stride = 128; break;
        case PatternLabel::P2: s.stride = 8; s.period = 256; break;
        case PatternLabel::P3: s.stride = 4096; break;
        case PatternLabel::P4: s.footprint = uint64_t{1} << 30; s.op_mode = OpMode::Rmw; break;
        case PatternLabel::P5: s.stride = 128; s.n_outer = 450; break;
        case PatternLabel::P6: s.stride = 4096; s.period = 256; break;
    }
    return s;
}

uint64_t natural_count(const GenSpec& spec) {
    const uint64_t per = records_per_elem(spec.op_mode);
    switch (spec.pattern) {
        case PatternLabel::P1:
        case PatternLabel::P3:
        case PatternLabel::P4:
            return spec.n_outer * per;
        case PatternLabel::P2:
        case PatternLabel::P6:
            return spec.n_outer * spec.period * per;
        case PatternLabel::P5: {
            const uint64_t n = spec.elem_count ? spec.elem_count : spec.n_outer;
            return n * (n + 1) / 2 * per;
        }
    }
    return 0;
}

Trace generate_n(const GenSpec& spec, uint64_t count) {
    spec.validate();
    Trace t;
    t.origin = "gen:" + to_string(spec.pattern);
    t.records.reserve(count);

    uint64_t left = count;
    switch (spec.pattern) {
        case PatternLabel::P1:
        case PatternLabel::P3: {
            for (uint64_t i = 0; left > 0; ++i)
                left -= emit_elem(t, spec.base_addr + i * spec.stride, spec.op_mode,
                                  spec.access_size, left);
            break;
        }
        case PatternLabel::P2:
        case PatternLabel::P6: {
            for (uint64_t i = 0; left > 0; ++i)
                left -= emit_elem(t, spec.base_addr + (i % spec.period) * spec.stride,
                                  spec.op_mode, spec.access_size, left);
            break;
        }
        case PatternLabel::P5: {
            for (uint64_t i = 1; left > 0; ++i)
                for (uint64_t j = 0; j < i && left > 0; ++j)
                    left -= emit_elem(t, spec.base_addr + j * spec.stride, spec.op_mode,
                                      spec.access_size, left);
            break;
        }
        case PatternLabel::P4: {
            SplitMix64 rng(spec.seed);
            const uint64_t align = std::max<uint32_t>(spec.access_size, 1);
            const uint64_t slots = std::max<uint64_t>(spec.footprint / align, 1);
            while (left > 0) {
                const uint64_t addr = spec.base_addr + rng.next_below(slots) * align;
                left -= emit_elem(t, addr, spec.op_mode, spec.access_size, left);
            }
            break;
        }
    }
    return t;
}

Trace generate(const GenSpec& spec) { return generate_n(spec, natural_count(spec)); }

Trace generate_mix(const std::vector<std::pair<GenSpec, double>>& parts, uint64_t total) {
    if (parts.empty()) throw ParamError("generate_mix: no parts");
    double sum = 0.0;
    for (const auto& [spec, frac] : parts) {
        if (frac <= 0.0) throw ParamError("generate_mix: fractions must be > 0");
        sum += frac;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ParamError("generate_mix: fractions sum to " + std::to_string(sum) +
                         ", expected 1");

    // Largest-remainder apportionment of `total` records.
    std::vector<uint64_t> counts(parts.size());
    std::vector<std::pair<double, size_t>> remainders(parts.size());
    uint64_t assigned = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        const double exact = parts[i].second * static_cast<double>(total);
        counts[i] = static_cast<uint64_t>(exact);
        remainders[i] = {exact - static_cast<double>(counts[i]), i};
        assigned += counts[i];
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (size_t k = 0; assigned < total; ++k, ++assigned) counts[remainders[k % parts.size()].second]++;

    Trace t;
    t.records.reserve(total);
    std::string origin = "mix:";
    uint64_t offset = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        Trace sub = generate_n(parts[i].first, counts[i]);
        if (i) origin += ",";
        origin += to_string(parts[i].first.pattern) + "[" + std::to_string(offset) + "," +
                  std::to_string(offset + counts[i]) + ")";
        offset += counts[i];
        for (TraceRecord r : sub.records) {
            r.seq = t.records.size();
            t.records.push_back(r);
        }
    }
    t.origin = origin;
    return t;
}

} // namespace patmap
