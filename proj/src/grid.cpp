#include "wellfn/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace wellfn {

std::string_view to_string(Spacing s) { return s == Spacing::log ? "log" : "linear"; }

std::optional<Spacing> parse_spacing(std::string_view name) {
    if (name == "log") return Spacing::log;
    if (name == "linear") return Spacing::linear;
    return std::nullopt;
}

void GridSpec::validate() const {
    if (!std::isfinite(u_min) || !std::isfinite(u_max) || !(u_min > 0.0) || !(u_min < u_max)) {
        throw std::invalid_argument("grid requires 0 < u_min < u_max");
    }
    if (n_points < 2) {
        throw std::invalid_argument("grid requires at least 2 points");
    }
}

std::vector<double> make_grid(const GridSpec& spec) {
    spec.validate();
    const auto n = static_cast<std::size_t>(spec.n_points);
    std::vector<double> u(n);
    const double last = static_cast<double>(n - 1);
    if (spec.spacing == Spacing::log) {
        const double lo = std::log(spec.u_min);
        const double span = std::log(spec.u_max) - lo;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = std::exp(lo + span * (static_cast<double>(i) / last));
        }
    } else {
        const double span = spec.u_max - spec.u_min;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = spec.u_min + span * (static_cast<double>(i) / last);
        }
    }
    u.front() = spec.u_min;
    u.back() = spec.u_max;
    return u;
}

}  // namespace wellfn
