/**
 * @file fit.hpp
 * @brief Levenberg-Marquardt refit of the large-u coefficients a1..a5.
 *
 * Minimizes sum_j [ln E1(u_j) - a1 ln(a2 exp(-a3 u_j) ln(1 + a4 / u_j^a5))]^2
 * with the analytic Jacobian, Marquardt diagonal scaling, damping x10 on a
 * rejected step and /10 on an accepted one.
 *
 * Iterates on (a1 ln a2, a1 a3, a1, a4, a5), in which the model is linear in
 * the first two. a1, a2 and a3 trade off along a narrow valley, so fits are
 * judged by achieved error, not by distance to the published coefficients.
 */

#pragma once

#include "wellfn/approx.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace wellfn {

struct FitOptions {
    int max_iter = 500;
    /// Stop once an accepted step changes the residual norm by less than this, relatively.
    double tol = 1e-12;
    double initial_lambda = 1e-3;
    /// Damping beyond this means no further progress is possible.
    double max_lambda = 1e16;
};

enum class FitStop { tolerance, stagnation, max_iterations };

std::string_view to_string(FitStop s);

struct FitIteration {
    int iteration = 0;
    double lambda = 0.0;
    double residual_norm = 0.0;  // after the step if accepted, else the unchanged norm
    bool accepted = false;
    Eq10Coefficients coefficients;
};

struct FitResult {
    Eq10Coefficients coefficients;
    int iterations = 0;
    double initial_residual_norm = 0.0;
    double final_residual_norm = 0.0;
    /// max |PE| of eq10 over the fit grid, percent.
    double max_pe_over_fit_domain = 0.0;
    bool converged = false;
    FitStop stop = FitStop::max_iterations;
    std::vector<FitIteration> trace;
};

/// A converged fit must reach this max |PE| (percent) over its grid.
inline constexpr double fit_pe_limit = 0.1;

/// n log-spaced points on (u_min, u_max]; u_min itself is excluded.
std::vector<double> fit_default_grid(int n = 500, double u_min = 1.0, double u_max = 100.0);

/// d/da_i of a1 ln[a2 exp(-a3 u) ln(1 + a4 / u^a5)] (the model, not the residual).
std::array<double, 5> jacobian_eq9(double u, const Eq10Coefficients& c);

/// ln E1(u_j) - model(u_j).
std::vector<double> fit_residuals(std::span<const double> u, const Eq10Coefficients& c);

/// Gradient of 1/2 sum r_j^2 with respect to a1..a5.
std::array<double, 5> objective_gradient(std::span<const double> u, const Eq10Coefficients& c);

/// Grid points must lie in (1, 100]; at least 50 of them. Init must be all positive.
FitResult fit_eq9(std::span<const double> u, const Eq10Coefficients& init,
                  const FitOptions& options = {});

}  // namespace wellfn
