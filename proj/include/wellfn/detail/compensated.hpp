/**
 * @file compensated.hpp
 * @brief Error-free transformations and double-double accumulation.
 *
 * Used where a sum must be resolved below binary64 round-off: the oracle's
 * power-series branch and the term-count diagnostics of the series module.
 */

#pragma once

#include <cmath>

namespace wellfn::detail {

/// s + e == a + b exactly (Knuth).
struct TwoSum {
    double sum;
    double err;
};

inline TwoSum two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline TwoSum two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h, double l = 0.0) : hi(h), lo(l) {}

    [[nodiscard]] double value() const { return hi + lo; }
};

inline DoubleDouble renormalize(double hi, double lo) {
    const TwoSum t = two_sum(hi, lo);
    return {t.sum, t.err};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    TwoSum s = two_sum(a.hi, b.hi);
    TwoSum t = two_sum(a.lo, b.lo);
    s.err += t.sum;
    DoubleDouble r = renormalize(s.sum, s.err);
    r.lo += t.err;
    return renormalize(r.hi, r.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, double b) {
    TwoSum p = two_prod(a.hi, b);
    p.err += a.lo * b;
    return renormalize(p.sum, p.err);
}

inline DoubleDouble operator/(DoubleDouble a, double b) {
    const double q1 = a.hi / b;
    // remainder a - q1*b, evaluated exactly in its leading part
    const TwoSum p = two_prod(q1, b);
    const double r = ((a.hi - p.sum) - p.err) + a.lo;
    const double q2 = r / b;
    return renormalize(q1, q2);
}

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace wellfn::detail
