#include "wellfn/bounds.hpp"

#include "wellfn/detail/checks.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace wellfn {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coefficients = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

void require_q(double q) {
    if (!std::isfinite(q) || !(q > 1.0)) {
        detail::domain_fail("q", q, "must be finite and > 1");
    }
}

// (u^q + c)^{1/q} - u for u > 0, without the cancellation of the direct form
double root_gap(double u, double q, double c) {
    if (u == 0.0) {
        return std::pow(c, 1.0 / q);
    }
    const double log_uq = q * std::log(u);
    // (u^q + c)^{1/q} - u = u * expm1(log1p(c / u^q) / q)
    const double ratio = std::exp(std::log(c) - log_uq);
    return u * std::expm1(std::log1p(ratio) / q);
}

}  // namespace

double lanczos_gamma(double x) {
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
    }
    x -= 1.0;
    double a = lanczos_coefficients[0];
    const double t = x + lanczos_g + 0.5;
    for (std::size_t i = 1; i < lanczos_coefficients.size(); ++i) {
        a += lanczos_coefficients[i] / (x + static_cast<double>(i));
    }
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double gautschi_coefficient(double q) {
    require_q(q);
    // ln Gamma(1 + 1/q) is O(q - 1) near q = 1; the exponent q/(q-1) cancels it
    const double log_gamma = std::log(lanczos_gamma(1.0 + 1.0 / q));
    return std::exp(q / (q - 1.0) * log_gamma);
}

BoundPair iq_bounds(double u, double q) {
    detail::require_nonnegative(u, "u");
    require_q(q);
    const double cq = gautschi_coefficient(q);
    return {0.5 * root_gap(u, q, 2.0), cq * root_gap(u, q, 1.0 / cq), false};
}

BoundPair incomplete_gamma_bounds(double x, double q) {
    detail::require_positive(x, "x");
    require_q(q);
    const BoundPair b = iq_bounds(std::pow(x, 1.0 / q), q);
    return {q * b.lower, q * b.upper, false};
}

BoundPair e1_scaled_bounds(double u) {
    detail::require_positive(u, "u");
    return {0.5 * std::log1p(2.0 / u), std::log1p(1.0 / u), false};
}

BoundPair e1_log_bounds(double u) {
    const BoundPair s = e1_scaled_bounds(u);
    return {std::log(s.lower) - u, std::log(s.upper) - u, true};
}

BoundPair e1_bounds(double u) {
    detail::require_positive(u, "u");
    if (u > bounds_log_threshold) {
        return e1_log_bounds(u);
    }
    const BoundPair s = e1_scaled_bounds(u);
    const double damping = std::exp(-u);
    return {damping * s.lower, damping * s.upper, false};
}

}  // namespace wellfn
