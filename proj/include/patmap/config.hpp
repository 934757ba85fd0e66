#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace patmap {

// Flat key=value configuration. Lines starting with '#' and blank lines are
// ignored; keys may not repeat.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::string& path); // throws FormatError
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    // Typed getters return the default when the key is absent and throw
    // FormatError when the value does not parse.
    std::string get(const std::string& key, const std::string& def) const;
    uint64_t get_u64(const std::string& key, uint64_t def) const;
    double get_double(const std::string& key, double def) const;
    bool get_bool(const std::string& key, bool def) const; // true/false/1/0

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace patmap
