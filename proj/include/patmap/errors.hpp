#pragma once

#include <stdexcept>

namespace patmap {

// Bad argument or configuration value. CLI maps this to exit code 2.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed input file (trace, profile, CSV, config). CLI maps this to exit code 3.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace patmap
