#pragma once

#include <string_view>
#include <optional>
#include <vector>

namespace wellfn {

enum class Spacing { log, linear };

std::string_view to_string(Spacing s);
std::optional<Spacing> parse_spacing(std::string_view name);

struct GridSpec {
    double u_min = 1e-3;
    double u_max = 100.0;
    int n_points = 2000;
    Spacing spacing = Spacing::log;

    /// Throws std::invalid_argument unless 0 < u_min < u_max and n_points >= 2.
    void validate() const;
};

/// Default sweep grid: 2000 log-spaced points on [1e-3, 100].
inline constexpr GridSpec default_sweep_grid{};

/// Ascending points; the endpoints are exactly u_min and u_max.
std::vector<double> make_grid(const GridSpec& spec);

}  // namespace wellfn
