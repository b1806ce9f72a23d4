/**
 * @file approx.hpp
 * @brief Closed-form approximations of the well function W(u) = E1(u).
 *
 * proposed     W(u) = -gamma - ln u + e^{-u/2} (u + u^2/4 + u^3/18 + u^4/144 + 23u^5/28800),  u <= 1
 *              W(u) = a2^a1 exp(-a1 a3 u) [ln(1 + a4 / u^a5)]^a1,                              u > 1
 * swamee_ojha  W(u) = [ (ln[(1+u)(0.56146/u + 0.65)])^{-7.7} + u^4 e^{7.7u} (2+u)^{3.7} ]^{-0.13}
 * barry        W(u) = e^{-u} ln[1 + 0.5615/u - 0.4385 (1.0421u + 1/(1+u^{1.5}) + 1.0801/(1 + 2.35u^{-1.0919}))^{-2}]
 *                     / (0.5616 + 0.4385 e^{-2.2803u})
 * vatankhah    W(u) = [ (1 - 0.19u^{0.7})^{-2} / (ln(0.565/u + 4))^2 + u^2 e^{2u} ((u + 1.384)/(u + 0.444))^2 ]^{-0.5}
 *
 * The competitor constants are kept exactly as published.
 */

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <variant>

namespace wellfn {

enum class ApproxKind {
    proposed,
    swamee_ojha,
    barry,
    vatankhah,
    classical_series,
    ramanujan_series,
    asymptotic_series,
};

inline constexpr std::array<ApproxKind, 7> all_approx_kinds = {
    ApproxKind::proposed,         ApproxKind::swamee_ojha,      ApproxKind::barry,
    ApproxKind::vatankhah,        ApproxKind::classical_series, ApproxKind::ramanujan_series,
    ApproxKind::asymptotic_series,
};

/// The four closed forms that have analytic derivatives.
inline constexpr std::array<ApproxKind, 4> closed_form_kinds = {
    ApproxKind::proposed, ApproxKind::swamee_ojha, ApproxKind::barry, ApproxKind::vatankhah};

std::string_view to_string(ApproxKind kind);
std::optional<ApproxKind> parse_approx_kind(std::string_view name);
bool has_analytic_derivative(ApproxKind kind);

/// Coefficients of ln W = a1 ln[a2 exp(-a3 u) ln(1 + a4 / u^a5)].
struct Eq10Coefficients {
    double a1 = 1.21;
    double a2 = 0.7484;
    double a3 = 0.8264;
    double a4 = 1.39;
    double a5 = 0.8346;

    [[nodiscard]] std::array<double, 5> as_array() const { return {a1, a2, a3, a4, a5}; }
    static Eq10Coefficients from_array(const std::array<double, 5>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }
    [[nodiscard]] bool all_positive() const {
        return a1 > 0.0 && a2 > 0.0 && a3 > 0.0 && a4 > 0.0 && a5 > 0.0;
    }

    /// Prefactor a2^a1 of the expanded form.
    [[nodiscard]] double prefactor() const;
    /// Decay rate a1 a3 of the expanded form.
    [[nodiscard]] double decay_rate() const;
};

inline constexpr Eq10Coefficients published_coefficients{};

/// Constants of the expanded large-u formula as printed.
inline constexpr double eq10_printed_prefactor = 0.7042;
inline constexpr double eq10_printed_decay = 0.99994;

/// Lower edge of the small-u branch's stated domain.
inline constexpr double proposed_domain_min = 1e-3;

double ramanujan5(double u);
double ramanujan5_derivative(double u);

/// Large-u branch from coefficients a1..a5.
double eq10(double u, const Eq10Coefficients& c = published_coefficients);
double eq10_derivative(double u, const Eq10Coefficients& c = published_coefficients);
/// ln eq10(u), finite where eq10 itself underflows.
double eq10_log(double u, const Eq10Coefficients& c = published_coefficients);

/// 0.7042 exp(-0.99994 u) [ln(1 + 1.39 / u^0.8346)]^1.21 with the printed constants.
double eq10_printed(double u);

/// ramanujan5 for u <= 1, eq10 for u > 1.
double w_proposed(double u);
/// u < proposed_domain_min lies outside the small-u branch's stated range.
inline bool outside_proposed_domain(double u) { return u < proposed_domain_min; }

double w_swamee_ojha(double u);
double w_barry(double u);
double w_vatankhah(double u);

/// W(u) by the given route. Series routes use their own truncation rules:
/// classical and Ramanujan to tol 1e-16 (cap 500), asymptotic truncated just
/// before its smallest term.
double evaluate(ApproxKind kind, double u);

/// Analytic dW/du; std::invalid_argument for kinds without one.
double dw_du(ApproxKind kind, double u);

/// 100 (w_ref - w_approx) / w_ref, signed.
double percentage_error(double w_ref, double w_approx);

/// Tag for the high-precision reference route.
struct Reference {};
inline constexpr Reference reference_route{};

/// Either the reference or one of the approximations.
using WellRoute = std::variant<Reference, ApproxKind>;

std::string_view to_string(const WellRoute& route);
std::optional<WellRoute> parse_well_route(std::string_view name);
double evaluate(const WellRoute& route, double u);

}  // namespace wellfn
