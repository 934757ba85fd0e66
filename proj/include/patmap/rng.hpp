#pragma once

#include <cstdint>

namespace patmap {

// splitmix64. Every pseudo-random choice in the toolkit draws from this
// recurrence so that traces and reports reproduce bit-for-bit across
// platforms (and across ports to other languages).
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Modulo reduction; the bias is negligible for the
    // bounds used here and keeps the sequence trivially portable.
    uint64_t next_below(uint64_t bound) { return next() % bound; }

    // Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

} // namespace patmap
