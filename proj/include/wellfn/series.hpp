/**
 * @file series.hpp
 * @brief Truncated series representations of E1(u) with convergence diagnostics.
 *
 * classical:   E1(u) = -gamma - ln u - sum_{k>=1} (-1)^k u^k / (k k!)
 * asymptotic:  E1(u) ~ e^{-u}/u * sum_{k=0}^{n-1} k! / (-u)^k
 * Ramanujan:   E1(u) = -gamma - ln u
 *                      + e^{-u/2} sum_{k>=1} u^k / (k! 2^{k-1}) * sum_{n=0}^{floor((k-1)/2)} 1/(2n+1)
 *
 * The Ramanujan form follows from Ramanujan's series for Ei(x) at x = -u;
 * every outer term is positive there, so it has no cancellation.
 */

#pragma once

#include <optional>

namespace wellfn {

struct EvalResult {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
    double last_term_magnitude = 0.0;
};

/// Convergent power series. Stops once a term is <= tol * |partial value|,
/// adds one guard term, and reports converged = false if k_max is reached
/// first. Plain (uncompensated) accumulation.
EvalResult classical_series(double u, double tol, int k_max);

/// Divergent asymptotic series truncated after n_terms terms (k = 0..n_terms-1).
/// converged is always false; last_term_magnitude is the last included term
/// scaled by e^{-u}/u.
EvalResult asymptotic_series(double u, int n_terms);

struct AsymptoticTruncation {
    int best_n = 1;
    double best_value = 0.0;
    double best_abs_error = 0.0;
};

/// Scans n = 1..n_max against the reference. Orders whose error lies within
/// the binary64 round-off floor of the minimum count as ties; ties go to the
/// order whose first omitted term is smallest.
AsymptoticTruncation asymptotic_optimal_truncation(double u, int n_max);

/// Ramanujan's series; same truncation rule as classical_series.
EvalResult ramanujan_series(double u, double tol, int k_max);

/// sum_{n=0}^{floor((k-1)/2)} 1/(2n+1), k >= 1.
double ramanujan_inner_sum(int k);

/// Polynomial coefficient of u^k in the outer sum: inner_sum(k) / (k! 2^{k-1}).
double ramanujan_coefficient(int k);

/// k-th outer term u^k inner_sum(k) / (k! 2^{k-1}), without the e^{-u/2} factor.
double ramanujan_term(double u, int k);

enum class SeriesMethod { classical, ramanujan };

/// Default cap for terms_to_converge.
inline constexpr int terms_to_converge_cap = 500;

/// Smallest term count whose partial sum lies within rel_target of the
/// reference. Terms are accumulated in double-double so that truncation is
/// separated from round-off. std::nullopt when the cap is hit first.
std::optional<int> terms_to_converge(SeriesMethod method, double u, double rel_target,
                                     int cap = terms_to_converge_cap);

}  // namespace wellfn
