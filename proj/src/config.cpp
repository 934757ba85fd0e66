#include "patmap/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "patmap/errors.hpp"

namespace patmap {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw FormatError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw FormatError("config line " + std::to_string(line_no) + ": empty key");
        if (!cfg.values_.emplace(key, value).second)
            throw FormatError("config line " + std::to_string(line_no) + ": duplicate key '" +
                              key + "'");
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

std::string KeyValueConfig::get(const std::string& key, const std::string& def) const {
    auto it = values_.find(key);
    return it == values_.end() ? def : it->second;
}

uint64_t KeyValueConfig::get_u64(const std::string& key, uint64_t def) const {
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    const std::string& v = it->second;
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw FormatError("config key '" + key + "': bad unsigned integer '" + v + "'");
    return out;
}

double KeyValueConfig::get_double(const std::string& key, double def) const {
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    try {
        size_t pos = 0;
        double out = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return out;
    } catch (const std::exception&) {
        throw FormatError("config key '" + key + "': bad number '" + it->second + "'");
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool def) const {
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    const std::string& v = it->second;
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw FormatError("config key '" + key + "': expected true/false/1/0, got '" + v + "'");
}

} // namespace patmap
