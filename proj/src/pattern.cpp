#include "patmap/pattern.hpp"

#include "patmap/errors.hpp"

namespace patmap {

std::string to_string(PatternLabel label) {
    static const char* names[kPatternCount] = {"P1", "P2", "P3", "P4", "P5", "P6"};
    return names[static_cast<size_t>(label)];
}

PatternLabel parse_pattern_label(const std::string& s) {
    if (s.size() == 2 && (s[0] == 'P' || s[0] == 'p') && s[1] >= '1' && s[1] <= '6')
        return static_cast<PatternLabel>(s[1] - '1');
    throw ParamError("unknown pattern label '" + s + "' (expected P1..P6)");
}

} // namespace patmap
