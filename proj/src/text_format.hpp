#pragma once

#include <charconv>
#include <string>

namespace rbmve::detail {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace rbmve::detail
