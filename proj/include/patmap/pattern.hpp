#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace patmap {

// The six base access patterns. P1/P3: aperiodic straight lines with low/high
// slope. P2/P6: fixed-period sawtooths with low/high per-step stride.
// P5: variable-period sawtooth (triangular sweeps). P4: random access.
enum class PatternLabel : uint8_t { P1 = 0, P2, P3, P4, P5, P6 };

constexpr size_t kPatternCount = 6;

constexpr std::array<PatternLabel, kPatternCount> kAllPatterns = {
    PatternLabel::P1, PatternLabel::P2, PatternLabel::P3,
    PatternLabel::P4, PatternLabel::P5, PatternLabel::P6};

std::string to_string(PatternLabel label);
// Accepts "P1".."P6" (case-insensitive). Throws ParamError otherwise.
PatternLabel parse_pattern_label(const std::string& s);

// Shared stride thresholds: c is the cache line size, d the distance below
// which a hardware stream prefetcher keeps tracking a stream. d is not
// published for commodity parts; 2048 bytes is this toolkit's documented
// default and every consumer takes it from configuration.
constexpr uint64_t kDefaultLineSize = 64;
constexpr uint64_t kDefaultTriggerDistance = 2048;

} // namespace patmap
