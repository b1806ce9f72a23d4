#include "wellfn/reference.hpp"

#include "wellfn/detail/compensated.hpp"
#include "wellfn/detail/checks.hpp"

#include <cmath>
#include <limits>

namespace wellfn {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

}  // namespace

OracleValue e1_power_series(double u) {
    detail::require_positive(u, "u");

    // -gamma - ln u - sum_{k>=1} (-u)^k / (k k!)
    detail::CompensatedSum sum;
    sum.add(-euler_gamma);
    sum.add(-std::log(u));
    double magnitude = euler_gamma + std::abs(std::log(u));

    double power = 1.0;  // (-u)^k / k!
    for (int k = 1; k < 1000; ++k) {
        power *= -u / k;
        const double term = power / k;
        sum.add(-term);
        magnitude += std::abs(term);
        if (std::abs(term) <= 1e-3 * eps * std::abs(sum.value())) {
            break;
        }
    }

    const double value = sum.value();
    return {value, 4.0 * eps * magnitude, OracleBranch::series};
}

OracleValue e1_continued_fraction(double u) {
    detail::require_positive(u, "u");

    constexpr double tiny = 1e-300;
    double b = u + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    int iterations = 1;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        iterations = i;
        if (std::abs(delta - 1.0) <= eps) {
            break;
        }
    }

    const double value = h * std::exp(-u);
    const double rel = std::max(1e-15, 2.0 * eps * std::sqrt(static_cast<double>(iterations)));
    return {value, rel * value, OracleBranch::continued_fraction};
}

OracleValue e1_reference(double u) {
    detail::require_positive(u, "u");
    if (u > underflow_cap) {
        return {0.0, 0.0, OracleBranch::underflow};
    }
    return u < reference_crossover ? e1_power_series(u) : e1_continued_fraction(u);
}

double e1(double u) { return e1_reference(u).value; }

double e1_derivative_exact(double u) {
    detail::require_positive(u, "u");
    return -std::exp(-u) / u;
}

}  // namespace wellfn
