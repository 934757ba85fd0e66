#pragma once

#include <iosfwd>
#include <string>

#include "patmap/trace.hpp"

namespace patmap {

enum class TraceFormat { Text, Binary };

// Text format, one record per line: `seq,addr_hex,op,size` with op R or W and
// the address in bare hex, e.g. `17,7f3a00,R,8`.
//
// Binary format: magic "GPTR", version byte 0x01, then packed little-endian
// records of addr (8 bytes), flags (1 byte, bit0 set for writes), size
// (2 bytes). seq is implicit in record order.
void write_trace(const Trace& t, std::ostream& out, TraceFormat format);
Trace read_trace(std::istream& in, TraceFormat format, const std::string& origin = "");

void write_trace_file(const Trace& t, const std::string& path, TraceFormat format);
// Sniffs the magic bytes: files starting with "GPTR" are read as binary,
// anything else as text.
Trace read_trace_file(const std::string& path);

} // namespace patmap
