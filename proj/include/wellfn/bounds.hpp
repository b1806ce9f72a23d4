/**
 * @file bounds.hpp
 * @brief Gautschi-type inequalities for I_q(u) and E1(u).
 *
 * For q > 1, u >= 0 and I_q(u) = e^{u^q} \int_u^\infty e^{-t^q} dt:
 *
 *   1/2 [(u^q + 2)^{1/q} - u]  <  I_q(u)  <=  c_q [(u^q + 1/c_q)^{1/q} - u],
 *   c_q = Gamma(1 + 1/q)^{q/(q-1)}.
 *
 * In the q -> infinity limit this becomes
 *
 *   1/2 ln(1 + 2/u)  <=  e^u E1(u)  <=  ln(1 + 1/u).
 */

#pragma once

namespace wellfn {

/// Above this u, e1_bounds switches to log-scale values.
inline constexpr double bounds_log_threshold = 500.0;

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
    /// When set, lower and upper hold natural logarithms of the bounds.
    bool log_scale = false;
};

/// Gamma(x) by the Lanczos approximation (g = 7, 9 terms), ~1e-15 relative
/// for x in [0.5, 10]. Reflection handles x < 0.5.
double lanczos_gamma(double x);

/// c_q = Gamma(1 + 1/q)^{q/(q-1)}, q > 1. Tends to e^{gamma - 1} as q -> 1+.
double gautschi_coefficient(double q);

/// Bounds on I_q(u) for u >= 0, q > 1.
BoundPair iq_bounds(double u, double q);

/// Bounds on e^x Gamma(1/q, x), obtained as q * iq_bounds(x^{1/q}, q).
/// As q grows these approach e1_scaled_bounds(x).
BoundPair incomplete_gamma_bounds(double x, double q);

/// Bounds on e^u E1(u): 1/2 ln(1 + 2/u) and ln(1 + 1/u).
BoundPair e1_scaled_bounds(double u);

/// Bounds on E1(u). Log-scale (log_scale == true) for u > bounds_log_threshold.
BoundPair e1_bounds(double u);

/// ln of the E1(u) bounds, for any u > 0.
BoundPair e1_log_bounds(double u);

}  // namespace wellfn
