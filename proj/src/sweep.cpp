#include "wellfn/sweep.hpp"

#include "wellfn/detail/checks.hpp"
#include "wellfn/reference.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace wellfn {

namespace {

void check_points(ApproxKind kind, std::span<const double> u, SweepTarget target) {
    if (u.size() < 2) {
        throw std::invalid_argument("sweep needs at least 2 points");
    }
    if (target == SweepTarget::derivative && !has_analytic_derivative(kind)) {
        throw std::invalid_argument("no analytic derivative for " + std::string(to_string(kind)));
    }
    for (double x : u) {
        if (!std::isfinite(x) || !(x > 0.0) || x > sweep_u_limit) {
            detail::domain_fail("u", x, "sweep points must lie in (0, 100]");
        }
    }
}

[[noreturn]] void rethrow_at(double u, const std::exception& e) {
    throw std::domain_error("at u = " + detail::format_double(u) + ": " + e.what());
}

// Serial reduction shared by both paths; ties go to the first (smallest) u.
void reduce_max(SweepReport& report) {
    report.max_abs_pe = -1.0;
    for (const ErrorSample& s : report.samples) {
        const double a = std::abs(s.pe_percent);
        if (a > report.max_abs_pe || std::isnan(a)) {
            report.max_abs_pe = a;
            report.argmax_u = s.u;
            if (std::isnan(a)) {
                break;
            }
        }
    }
}

}  // namespace

std::string_view to_string(SweepTarget t) {
    return t == SweepTarget::value ? "value" : "derivative";
}

ErrorSample error_sample(ApproxKind kind, SweepTarget target, double u) {
    ErrorSample s;
    s.u = u;
    if (target == SweepTarget::value) {
        s.w_ref = e1(u);
        s.w_approx = evaluate(kind, u);
    } else {
        s.w_ref = e1_derivative_exact(u);
        s.w_approx = dw_du(kind, u);
    }
    s.pe_percent = percentage_error(s.w_ref, s.w_approx);
    return s;
}

SweepReport sweep_points_serial(ApproxKind kind, std::span<const double> u, SweepTarget target) {
    check_points(kind, u, target);
    SweepReport report{kind, target, std::vector<ErrorSample>(u.size()), 0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) {
        try {
            report.samples[i] = error_sample(kind, target, u[i]);
        } catch (const std::exception& e) {
            rethrow_at(u[i], e);
        }
    }
    reduce_max(report);
    return report;
}

SweepReport sweep_points(ApproxKind kind, std::span<const double> u, SweepTarget target) {
    check_points(kind, u, target);
    SweepReport report{kind, target, std::vector<ErrorSample>(u.size()), 0.0, 0.0};

    const auto n = static_cast<std::ptrdiff_t>(u.size());
    std::ptrdiff_t first_failure = n;
    std::string failure_message;

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            report.samples[static_cast<std::size_t>(i)] =
                error_sample(kind, target, u[static_cast<std::size_t>(i)]);
        } catch (const std::exception& e) {
#pragma omp critical(wellfn_sweep_failure)
            {
                if (i < first_failure) {
                    first_failure = i;
                    failure_message = e.what();
                }
            }
        }
    }

    if (first_failure < n) {
        rethrow_at(u[static_cast<std::size_t>(first_failure)],
                   std::runtime_error(failure_message));
    }
    reduce_max(report);
    return report;
}

SweepReport sweep(ApproxKind kind, const GridSpec& grid, SweepTarget target) {
    const std::vector<double> u = make_grid(grid);
    return sweep_points(kind, u, target);
}

SweepReport sweep_serial(ApproxKind kind, const GridSpec& grid, SweepTarget target) {
    const std::vector<double> u = make_grid(grid);
    return sweep_points_serial(kind, u, target);
}

}  // namespace wellfn
