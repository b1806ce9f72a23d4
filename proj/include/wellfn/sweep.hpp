/**
 * @file sweep.hpp
 * @brief Percentage-error sweeps of an approximation over a u grid.
 *
 * sweep() splits the grid across OpenMP threads; sweep_serial() is the
 * single-threaded reference it is tested against. Both produce bit-identical
 * reports: samples are written by index and the maximum is selected in a
 * serial pass afterwards, ties going to the smaller u.
 */

#pragma once

#include "wellfn/approx.hpp"
#include "wellfn/grid.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace wellfn {

enum class SweepTarget { value, derivative };

std::string_view to_string(SweepTarget t);

/// Upper edge of the sweep domain (0, 100].
inline constexpr double sweep_u_limit = 100.0;

struct ErrorSample {
    double u = 0.0;
    double w_ref = 0.0;
    double w_approx = 0.0;
    double pe_percent = 0.0;
};

struct SweepReport {
    ApproxKind kind = ApproxKind::proposed;
    SweepTarget target = SweepTarget::value;
    std::vector<ErrorSample> samples;
    double max_abs_pe = 0.0;
    double argmax_u = 0.0;
};

/// One sample: reference from e1_reference / e1_derivative_exact.
ErrorSample error_sample(ApproxKind kind, SweepTarget target, double u);

SweepReport sweep(ApproxKind kind, const GridSpec& grid, SweepTarget target);
SweepReport sweep_serial(ApproxKind kind, const GridSpec& grid, SweepTarget target);

/// Same, over explicit ascending points in (0, 100].
SweepReport sweep_points(ApproxKind kind, std::span<const double> u, SweepTarget target);
SweepReport sweep_points_serial(ApproxKind kind, std::span<const double> u, SweepTarget target);

}  // namespace wellfn
