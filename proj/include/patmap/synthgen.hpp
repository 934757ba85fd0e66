#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "patmap/pattern.hpp"
#include "patmap/trace.hpp"

namespace patmap {

// What "Operate A[i]" does per element. Rmw emits a read immediately followed
// by a write to the same address (two records per element).
enum class OpMode : uint8_t { Read, Write, Rmw };

struct GenSpec {
    PatternLabel pattern = PatternLabel::P1;
    uint64_t base_addr = 0;
    uint64_t stride = 128;     // bytes between consecutive elements
    uint64_t period = 1024;    // accesses per repetition (P2/P6)
    uint64_t n_outer = 1000;   // repetition count; P5 triangular bound
    uint64_t footprint = uint64_t{1} << 30; // P4 address range in bytes
    uint64_t elem_count = 0;   // P5 triangular bound; 0 means use n_outer
    uint64_t seed = 1;
    uint32_t access_size = 8;
    OpMode op_mode = OpMode::Read;

    // Per-pattern stride/footprint constraints; throws ParamError.
    void validate() const;
};

// A spec pre-populated with defaults that both satisfy the pattern's stride
// constraint and classify back to the same pattern (P4 defaults to Rmw).
GenSpec default_spec(PatternLabel pattern);

// Record count implied by the spec's own loop bounds.
uint64_t natural_count(const GenSpec& spec);

// Deterministic: the same spec (including seed) always yields a byte-identical
// trace. Address sequences per pattern:
//   P1/P3  base + i*stride                       (aperiodic line)
//   P2/P6  base + (i mod period)*stride          (fixed-period sawtooth)
//   P5     sweeps j=0..i-1 of base + j*stride for i = 1,2,3,...
//   P4     base + random offset < footprint, aligned to access_size
Trace generate(const GenSpec& spec);
// Same sequence cut (or extended) to exactly `count` records.
Trace generate_n(const GenSpec& spec, uint64_t count);

// Concatenates sub-traces with record counts proportional to the fractions
// (largest-remainder rounding, total preserved). Fractions must be positive
// and sum to 1 within 1e-9. The origin string records the segment layout,
// e.g. "mix:P2[0,50000),P4[50000,100000)".
Trace generate_mix(const std::vector<std::pair<GenSpec, double>>& parts, uint64_t total);

} // namespace patmap
