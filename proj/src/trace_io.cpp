#include "patmap/trace_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "patmap/errors.hpp"

namespace patmap {

namespace {

constexpr char kMagic[4] = {'G', 'P', 'T', 'R'};
constexpr uint8_t kVersion = 0x01;

void put_le(std::string& buf, uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint64_t get_le(const unsigned char* p, int bytes) {
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
    return v;
}

uint64_t parse_u64(std::string_view s, int base, const std::string& what, size_t line_no) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw FormatError("trace line " + std::to_string(line_no) + ": bad " + what + " '" +
                          std::string(s) + "'");
    return v;
}

} // namespace

void write_trace(const Trace& t, std::ostream& out, TraceFormat format) {
    if (format == TraceFormat::Text) {
        char line[64];
        for (const TraceRecord& r : t.records) {
            int len = std::snprintf(line, sizeof(line), "%llu,%llx,%c,%u\n",
                                    static_cast<unsigned long long>(r.seq),
                                    static_cast<unsigned long long>(r.addr),
                                    r.op == Op::Write ? 'W' : 'R', r.size);
            out.write(line, len);
        }
    } else {
        std::string buf;
        buf.reserve(5 + t.records.size() * 11);
        buf.append(kMagic, 4);
        buf.push_back(static_cast<char>(kVersion));
        for (const TraceRecord& r : t.records) {
            put_le(buf, r.addr, 8);
            buf.push_back(static_cast<char>(r.op == Op::Write ? 0x01 : 0x00));
            put_le(buf, r.size, 2);
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw FormatError("trace write failed");
}

Trace read_trace(std::istream& in, TraceFormat format, const std::string& origin) {
    Trace t;
    t.origin = origin;
    if (format == TraceFormat::Text) {
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::string_view sv(line);
            std::array<std::string_view, 4> field;
            for (int f = 0; f < 4; ++f) {
                size_t comma = sv.find(',');
                if (f < 3 && comma == std::string_view::npos)
                    throw FormatError("trace line " + std::to_string(line_no) +
                                      ": expected 4 comma-separated fields");
                field[f] = sv.substr(0, comma);
                sv = (comma == std::string_view::npos) ? std::string_view{} : sv.substr(comma + 1);
            }
            if (field[2] != "R" && field[2] != "W")
                throw FormatError("trace line " + std::to_string(line_no) + ": op must be R or W");
            TraceRecord r;
            r.seq = parse_u64(field[0], 10, "seq", line_no);
            r.addr = parse_u64(field[1], 16, "addr", line_no);
            r.op = field[2] == "W" ? Op::Write : Op::Read;
            uint64_t size = parse_u64(field[3], 10, "size", line_no);
            if (size == 0 || size > kMaxAccessSize)
                throw FormatError("trace line " + std::to_string(line_no) + ": size out of range");
            r.size = static_cast<uint32_t>(size);
            t.records.push_back(r);
        }
    } else {
        std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (data.size() < 5 || data.compare(0, 4, kMagic, 4) != 0)
            throw FormatError("binary trace: missing GPTR magic");
        if (static_cast<uint8_t>(data[4]) != kVersion)
            throw FormatError("binary trace: unsupported version");
        const size_t body = data.size() - 5;
        if (body % 11 != 0)
            throw FormatError("binary trace: truncated record (body not a multiple of 11 bytes)");
        const auto* p = reinterpret_cast<const unsigned char*>(data.data()) + 5;
        const size_t count = body / 11;
        t.records.reserve(count);
        for (size_t i = 0; i < count; ++i, p += 11) {
            TraceRecord r;
            r.seq = i;
            r.addr = get_le(p, 8);
            r.op = (p[8] & 0x01) ? Op::Write : Op::Read;
            r.size = static_cast<uint32_t>(get_le(p + 9, 2));
            t.records.push_back(r);
        }
    }
    return t;
}

void write_trace_file(const Trace& t, const std::string& path, TraceFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open for writing: " + path);
    write_trace(t, out, format);
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open: " + path);
    // Slurp before sniffing so pipes and process substitutions work too.
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const bool binary = data.size() >= 4 && data.compare(0, 4, kMagic, 4) == 0;
    std::istringstream ss(std::move(data));
    return read_trace(ss, binary ? TraceFormat::Binary : TraceFormat::Text, path);
}

} // namespace patmap
