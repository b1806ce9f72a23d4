#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace wellfn::detail {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
    double x = 0.0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, x);
    if (res.ec != std::errc{} || res.ptr != end) {
        return std::nullopt;
    }
    return x;
}

}  // namespace wellfn::detail
