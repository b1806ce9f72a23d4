#include "wellfn/approx.hpp"

#include "wellfn/detail/checks.hpp"
#include "wellfn/reference.hpp"
#include "wellfn/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wellfn {

namespace {

// intermediates beyond this are combined in log space
const double log_overflow_guard = std::log(1e300);

struct Mixture {
    double log_sum;   // ln(A + B)
    double weight_a;  // A / (A + B)
    double weight_b;  // B / (A + B)
};

Mixture log_sum_exp(double log_a, double log_b) {
    const double m = std::max(log_a, log_b);
    if (std::isinf(m)) {
        // one side infinite (e.g. a pole of A)
        return {m, log_a >= log_b ? 1.0 : 0.0, log_a >= log_b ? 0.0 : 1.0};
    }
    const double ea = std::exp(log_a - m);
    const double eb = std::exp(log_b - m);
    const double s = ea + eb;
    return {m + std::log(s), ea / s, eb / s};
}

// ---- Swamee-Ojha --------------------------------------------------------

struct SwameeOjhaParts {
    double log_a;
    double log_b;
    double dlog_a;  // d ln A / du
    double dlog_b;  // d ln B / du
};

SwameeOjhaParts swamee_ojha_parts(double u) {
    const double inner = (1.0 + u) * (0.56146 / u + 0.65);
    const double ell = std::log(inner);
    const double dell = 1.0 / (1.0 + u) - (0.56146 / (u * u)) / (0.56146 / u + 0.65);
    return {
        -7.7 * std::log(ell),
        4.0 * std::log(u) + 7.7 * u + 3.7 * std::log(2.0 + u),
        -7.7 * dell / ell,
        4.0 / u + 7.7 + 3.7 / (2.0 + u),
    };
}

// ---- Vatankhah ----------------------------------------------------------

struct VatankhahParts {
    double base;  // 1 - 0.19 u^0.7
    double ell;   // ln(0.565/u + 4)
    double ratio; // (u + 1.384) / (u + 0.444)
    double log_a;
    double log_b;
    double dlog_a;
    double dlog_b;
};

VatankhahParts vatankhah_parts(double u) {
    VatankhahParts p{};
    p.base = 1.0 - 0.19 * std::pow(u, 0.7);
    p.ell = std::log(0.565 / u + 4.0);
    p.ratio = (u + 1.384) / (u + 0.444);
    p.log_a = -2.0 * std::log(std::abs(p.base)) - 2.0 * std::log(p.ell);
    p.log_b = 2.0 * std::log(u) + 2.0 * u + 2.0 * std::log(p.ratio);
    const double dell = (-0.565 / (u * u)) / (0.565 / u + 4.0);
    p.dlog_a = 2.0 * 0.19 * 0.7 * std::pow(u, -0.3) / p.base - 2.0 * dell / p.ell;
    p.dlog_b = 2.0 / u + 2.0 + 2.0 / (u + 1.384) - 2.0 / (u + 0.444);
    return p;
}

// ---- Barry --------------------------------------------------------------

struct BarryParts {
    double h;
    double dh;
    double g_minus_1;
    double dg;
    double log_g;
    double den;
    double dden;
};

BarryParts barry_parts(double u) {
    BarryParts p{};
    const double u15 = std::pow(u, 1.5);
    const double v = 1.0 + 2.35 * std::pow(u, -1.0919);
    p.h = 1.0421 * u + 1.0 / (1.0 + u15) + 1.0801 / v;
    p.dh = 1.0421 - 1.5 * std::sqrt(u) / ((1.0 + u15) * (1.0 + u15)) +
           1.0801 * 2.35 * 1.0919 * std::pow(u, -2.0919) / (v * v);
    p.g_minus_1 = 0.5615 / u - 0.4385 / (p.h * p.h);
    p.dg = -0.5615 / (u * u) + 2.0 * 0.4385 * p.dh / (p.h * p.h * p.h);
    p.log_g = std::log1p(p.g_minus_1);
    const double decay = std::exp(-2.2803 * u);
    p.den = 0.5616 + 0.4385 * decay;
    p.dden = -2.2803 * 0.4385 * decay;
    return p;
}

// ---- Ramanujan, 5 terms -------------------------------------------------

double ramanujan5_poly(double u) {
    return u * (1.0 + u * (1.0 / 4.0 + u * (1.0 / 18.0 + u * (1.0 / 144.0 + u * (23.0 / 28800.0)))));
}

double ramanujan5_poly_derivative(double u) {
    return 1.0 + u * (1.0 / 2.0 + u * (1.0 / 6.0 + u * (1.0 / 36.0 + u * (23.0 / 5760.0))));
}

// ln(1 + a4 / u^a5) and its u-derivative
struct Eq10Inner {
    double log_term;
    double dlog_term;
};

Eq10Inner eq10_inner(double u, const Eq10Coefficients& c) {
    const double x = c.a4 * std::pow(u, -c.a5);
    const double ell = std::log1p(x);
    const double dx = -c.a5 * x / u;
    return {ell, dx / (1.0 + x)};
}

}  // namespace

std::string_view to_string(ApproxKind kind) {
    switch (kind) {
        case ApproxKind::proposed: return "proposed";
        case ApproxKind::swamee_ojha: return "swamee_ojha";
        case ApproxKind::barry: return "barry";
        case ApproxKind::vatankhah: return "vatankhah";
        case ApproxKind::classical_series: return "classical_series";
        case ApproxKind::ramanujan_series: return "ramanujan_series";
        case ApproxKind::asymptotic_series: return "asymptotic_series";
    }
    return "unknown";
}

std::optional<ApproxKind> parse_approx_kind(std::string_view name) {
    for (ApproxKind k : all_approx_kinds) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

bool has_analytic_derivative(ApproxKind kind) {
    return std::find(closed_form_kinds.begin(), closed_form_kinds.end(), kind) !=
           closed_form_kinds.end();
}

double Eq10Coefficients::prefactor() const { return std::pow(a2, a1); }
double Eq10Coefficients::decay_rate() const { return a1 * a3; }

double ramanujan5(double u) {
    detail::require_positive(u, "u");
    return -euler_gamma - std::log(u) + std::exp(-0.5 * u) * ramanujan5_poly(u);
}

double ramanujan5_derivative(double u) {
    detail::require_positive(u, "u");
    return -1.0 / u +
           std::exp(-0.5 * u) * (ramanujan5_poly_derivative(u) - 0.5 * ramanujan5_poly(u));
}

double eq10_log(double u, const Eq10Coefficients& c) {
    detail::require_positive(u, "u");
    const Eq10Inner in = eq10_inner(u, c);
    return c.a1 * (std::log(c.a2) - c.a3 * u + std::log(in.log_term));
}

double eq10(double u, const Eq10Coefficients& c) { return std::exp(eq10_log(u, c)); }

double eq10_derivative(double u, const Eq10Coefficients& c) {
    detail::require_positive(u, "u");
    const Eq10Inner in = eq10_inner(u, c);
    return eq10(u, c) * c.a1 * (-c.a3 + in.dlog_term / in.log_term);
}

double eq10_printed(double u) {
    detail::require_positive(u, "u");
    return eq10_printed_prefactor * std::exp(-eq10_printed_decay * u) *
           std::pow(std::log(1.0 + 1.39 / std::pow(u, 0.8346)), 1.21);
}

double w_proposed(double u) {
    detail::require_positive(u, "u");
    return u <= 1.0 ? ramanujan5(u) : eq10(u);
}

double w_swamee_ojha(double u) {
    detail::require_positive(u, "u");
    const SwameeOjhaParts p = swamee_ojha_parts(u);
    if (std::max(p.log_a, p.log_b) < log_overflow_guard) {
        const double ell = std::log((1.0 + u) * (0.56146 / u + 0.65));
        const double s = std::pow(ell, -7.7) + std::pow(u, 4) * std::exp(7.7 * u) * std::pow(2.0 + u, 3.7);
        return std::pow(s, -0.13);
    }
    return std::exp(-0.13 * log_sum_exp(p.log_a, p.log_b).log_sum);
}

double w_barry(double u) {
    detail::require_positive(u, "u");
    const BarryParts p = barry_parts(u);
    return std::exp(-u) * p.log_g / p.den;
}

double w_vatankhah(double u) {
    detail::require_positive(u, "u");
    const VatankhahParts p = vatankhah_parts(u);
    if (std::max(p.log_a, p.log_b) < log_overflow_guard) {
        const double s = std::pow(p.base, -2.0) / (p.ell * p.ell) +
                         u * u * std::exp(2.0 * u) * p.ratio * p.ratio;
        return std::pow(s, -0.5);
    }
    return std::exp(-0.5 * log_sum_exp(p.log_a, p.log_b).log_sum);
}

double evaluate(ApproxKind kind, double u) {
    switch (kind) {
        case ApproxKind::proposed: return w_proposed(u);
        case ApproxKind::swamee_ojha: return w_swamee_ojha(u);
        case ApproxKind::barry: return w_barry(u);
        case ApproxKind::vatankhah: return w_vatankhah(u);
        case ApproxKind::classical_series: return classical_series(u, 1e-16, 500).value;
        case ApproxKind::ramanujan_series: return ramanujan_series(u, 1e-16, 500).value;
        case ApproxKind::asymptotic_series: {
            detail::require_positive(u, "u");
            // truncated just before the smallest term (index ~ floor(u))
            const int n = static_cast<int>(std::clamp(std::floor(u), 1.0, 500.0));
            return asymptotic_series(u, n).value;
        }
    }
    throw std::invalid_argument("unknown approximation kind");
}

double dw_du(ApproxKind kind, double u) {
    detail::require_positive(u, "u");
    switch (kind) {
        case ApproxKind::proposed:
            return u <= 1.0 ? ramanujan5_derivative(u) : eq10_derivative(u);
        case ApproxKind::swamee_ojha: {
            const SwameeOjhaParts p = swamee_ojha_parts(u);
            const Mixture m = log_sum_exp(p.log_a, p.log_b);
            return -0.13 * w_swamee_ojha(u) * (m.weight_a * p.dlog_a + m.weight_b * p.dlog_b);
        }
        case ApproxKind::barry: {
            const BarryParts p = barry_parts(u);
            return w_barry(u) *
                   (-1.0 + p.dg / ((1.0 + p.g_minus_1) * p.log_g) - p.dden / p.den);
        }
        case ApproxKind::vatankhah: {
            const VatankhahParts p = vatankhah_parts(u);
            const Mixture m = log_sum_exp(p.log_a, p.log_b);
            return -0.5 * w_vatankhah(u) * (m.weight_a * p.dlog_a + m.weight_b * p.dlog_b);
        }
        default:
            break;
    }
    throw std::invalid_argument("no analytic derivative for " + std::string(to_string(kind)));
}

double percentage_error(double w_ref, double w_approx) {
    if (!std::isfinite(w_ref) || w_ref == 0.0) {
        detail::domain_fail("w_ref", w_ref, "must be finite and nonzero");
    }
    return 100.0 * (w_ref - w_approx) / w_ref;
}

std::string_view to_string(const WellRoute& route) {
    if (const auto* k = std::get_if<ApproxKind>(&route)) {
        return to_string(*k);
    }
    return "reference";
}

std::optional<WellRoute> parse_well_route(std::string_view name) {
    if (name == "reference") {
        return WellRoute{reference_route};
    }
    if (auto k = parse_approx_kind(name)) {
        return WellRoute{*k};
    }
    return std::nullopt;
}

double evaluate(const WellRoute& route, double u) {
    if (const auto* k = std::get_if<ApproxKind>(&route)) {
        return evaluate(*k, u);
    }
    return e1(u);
}

}  // namespace wellfn
