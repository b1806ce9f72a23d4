/**
 * @file reference.hpp
 * @brief High-precision reference values of the exponential integral E1(u).
 *
 *   E1(u) = \int_u^\infty e^{-t}/t dt,   u > 0
 *
 * Below the crossover (u < 1) the convergent power series is summed with
 * compensated accumulation; at and above it the continued fraction
 *
 *   E1(u) = e^{-u} / (u + 1 - 1/(u + 3 - 4/(u + 5 - ...)))
 *
 * is evaluated with the modified Lentz algorithm. Both branches reach
 * ~1e-15 relative accuracy; the advertised bound is 1e-12.
 */

#pragma once

namespace wellfn {

/// Euler-Mascheroni constant to full binary64 precision.
inline constexpr double euler_gamma = 0.57721566490153286;

/// Arguments above this underflow binary64 once multiplied by e^{-u}.
inline constexpr double underflow_cap = 700.0;

/// Series/continued-fraction crossover of the reference evaluator.
inline constexpr double reference_crossover = 1.0;

enum class OracleBranch { series, continued_fraction, underflow };

struct OracleValue {
    double value = 0.0;
    double est_abs_error = 0.0;
    OracleBranch branch = OracleBranch::series;

    [[nodiscard]] bool underflow() const { return branch == OracleBranch::underflow; }
};

/// Reference E1(u). Throws std::domain_error for u <= 0 or non-finite u.
/// For u > underflow_cap the result is value 0 with branch == underflow.
OracleValue e1_reference(double u);

/// Shorthand for e1_reference(u).value.
double e1(double u);

/// Individual branches, exposed so their agreement can be tested directly.
/// Both accept any u > 0; accuracy is only claimed on their own side.
OracleValue e1_power_series(double u);
OracleValue e1_continued_fraction(double u);

/// dE1/du = -e^{-u}/u.
double e1_derivative_exact(double u);

}  // namespace wellfn
