#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wellfn/detail/format.hpp"

namespace wellfn::detail {

[[noreturn]] inline void domain_fail(std::string_view name, double value, std::string_view need) {
    throw std::domain_error(std::string(name) + " = " + format_double(value) + ": " +
                            std::string(need));
}

inline void require_positive(double value, std::string_view name) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        domain_fail(name, value, "must be finite and > 0");
    }
}

inline void require_nonnegative(double value, std::string_view name) {
    if (!std::isfinite(value) || value < 0.0) {
        domain_fail(name, value, "must be finite and >= 0");
    }
}

}  // namespace wellfn::detail
