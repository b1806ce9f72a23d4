#include "wellfn/series.hpp"

#include "wellfn/detail/checks.hpp"
#include "wellfn/detail/compensated.hpp"
#include "wellfn/reference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wellfn {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// euler_gamma split into hi + lo
constexpr detail::DoubleDouble euler_gamma_dd{0.57721566490153286, -4.942915152430645e-18};

void check_series_args(double u, double tol, int k_max) {
    detail::require_positive(u, "u");
    detail::require_positive(tol, "tol");
    if (k_max < 1) {
        throw std::invalid_argument("k_max must be >= 1");
    }
}

// Shared driver for the two convergent series. next_term(k) returns the k-th
// contribution to the value (sign included); the value is base + sum.
template <class NextTerm>
EvalResult sum_convergent(double base, double tol, int k_max, NextTerm next_term) {
    double partial = base;
    EvalResult out;
    bool stop_armed = false;
    for (int k = 1; k <= k_max; ++k) {
        const double term = next_term(k);
        partial += term;
        out.terms_used = k;
        out.last_term_magnitude = std::abs(term);
        if (stop_armed) {
            out.converged = true;
            break;
        }
        if (std::abs(term) <= tol * std::abs(partial)) {
            stop_armed = true;  // one guard term follows
        }
    }
    out.value = partial;
    return out;
}

}  // namespace

EvalResult classical_series(double u, double tol, int k_max) {
    check_series_args(u, tol, k_max);
    double power = 1.0;  // (-u)^k / k!
    return sum_convergent(-euler_gamma - std::log(u), tol, k_max, [&](int k) {
        power *= -u / k;
        return -power / k;
    });
}

EvalResult asymptotic_series(double u, int n_terms) {
    detail::require_positive(u, "u");
    if (n_terms < 1) {
        throw std::invalid_argument("n_terms must be >= 1");
    }
    const double prefactor = std::exp(-u) / u;
    double term = 1.0;  // k! / (-u)^k
    double sum = 1.0;
    for (int k = 1; k < n_terms; ++k) {
        term *= -k / u;
        sum += term;
    }
    EvalResult out;
    out.value = prefactor * sum;
    out.terms_used = n_terms;
    out.converged = false;
    out.last_term_magnitude = prefactor * std::abs(term);
    return out;
}

AsymptoticTruncation asymptotic_optimal_truncation(double u, int n_max) {
    detail::require_positive(u, "u");
    if (n_max < 1) {
        throw std::invalid_argument("n_max must be >= 1");
    }
    const double ref = e1(u);
    const double prefactor = std::exp(-u) / u;

    struct Candidate {
        double value;
        double error;
        double next_term;
    };
    std::vector<Candidate> scan;
    scan.reserve(static_cast<std::size_t>(n_max));

    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        // sum holds k = 0..n-1; the first omitted term is k = n
        const double omitted = term * (-n / u);
        const double value = prefactor * sum;
        scan.push_back({value, std::abs(value - ref), prefactor * std::abs(omitted)});
        term = omitted;
        sum += term;
    }

    double min_error = std::numeric_limits<double>::infinity();
    for (const auto& c : scan) {
        min_error = std::min(min_error, c.error);
    }
    const double floor = std::max(min_error, 4.0 * eps * std::abs(ref));

    AsymptoticTruncation best;
    double best_next = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        const Candidate& c = scan[static_cast<std::size_t>(n - 1)];
        if (c.error <= floor && c.next_term < best_next) {
            best_next = c.next_term;
            best = {n, c.value, c.error};
        }
    }
    return best;
}

double ramanujan_inner_sum(int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    double s = 0.0;
    for (int n = 0; n <= (k - 1) / 2; ++n) {
        s += 1.0 / (2.0 * n + 1.0);
    }
    return s;
}

double ramanujan_coefficient(int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    double c = 1.0;  // 1 / (k! 2^{k-1})
    for (int j = 1; j <= k; ++j) {
        c /= j;
        if (j > 1) {
            c /= 2.0;
        }
    }
    return c * ramanujan_inner_sum(k);
}

double ramanujan_term(double u, int k) {
    detail::require_positive(u, "u");
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    double t = 2.0;  // u^k / (k! 2^{k-1}) built as 2 * prod (u / (2j))
    for (int j = 1; j <= k; ++j) {
        t *= u / (2.0 * j);
    }
    return t * ramanujan_inner_sum(k);
}

EvalResult ramanujan_series(double u, double tol, int k_max) {
    check_series_args(u, tol, k_max);
    const double damping = std::exp(-0.5 * u);
    double power = 2.0 * damping;  // e^{-u/2} u^k / (k! 2^{k-1})
    double inner = 0.0;
    return sum_convergent(-euler_gamma - std::log(u), tol, k_max, [&](int k) {
        power *= u / (2.0 * k);
        if (k % 2 == 1) {
            inner += 1.0 / k;  // floor((k-1)/2) advances at odd k, adding 1/(2n+1) = 1/k
        }
        return power * inner;
    });
}

std::optional<int> terms_to_converge(SeriesMethod method, double u, double rel_target, int cap) {
    detail::require_positive(u, "u");
    if (!(rel_target > 0.0 && rel_target < 1.0)) {
        throw std::invalid_argument("rel_target must lie in (0, 1)");
    }
    const double ref = e1(u);
    const detail::DoubleDouble base = -euler_gamma_dd - detail::DoubleDouble(std::log(u));

    // Partial sums are kept in double-double; ref carries ~1e-15 relative error.
    detail::DoubleDouble sum;
    detail::DoubleDouble power(method == SeriesMethod::classical ? 1.0 : 2.0);
    detail::DoubleDouble inner;
    const double damping = std::exp(-0.5 * u);

    for (int k = 1; k <= cap; ++k) {
        detail::DoubleDouble value;
        if (method == SeriesMethod::classical) {
            power = power * (-u) / static_cast<double>(k);
            sum = sum + power / static_cast<double>(k);
            value = base - sum;
        } else {
            power = power * u / (2.0 * k);
            if (k % 2 == 1) {
                inner = inner + detail::DoubleDouble(1.0) / static_cast<double>(k);
            }
            // all terms positive: no cancellation to protect against here
            sum = sum + detail::DoubleDouble(power.value() * inner.value());
            value = base + sum * damping;
        }
        if (std::abs((value - detail::DoubleDouble(ref)).value()) <= rel_target * ref) {
            return k;
        }
    }
    return std::nullopt;
}

}  // namespace wellfn
