#pragma once

#include <charconv>
#include <string>

namespace fpx {

/// Shortest round-trip decimal form of a double. Used for every number that
/// lands in a CSV/JSON artifact so output bytes depend only on the values.
inline std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace fpx
