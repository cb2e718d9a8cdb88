#pragma once

#include <charconv>
#include <string>

namespace tscmon {

// Shortest decimal form that round-trips through from_chars exactly.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace tscmon
