/**
 * @file kernel.hpp
 * @brief Theis drawdown and the discrete pumping kernel.
 *
 *   s(r, t) = Q / (4 pi T) W(u),           u = r^2 S / (4 T t)
 *   U(r, t) = 1 / (4 pi T) [ W(r^2 S / (4 T t)) - W(r^2 S / (4 T (t - tau))) ],  t > tau
 *
 * U is the response at time t to a unit pumping pulse of length tau that
 * starts at t = 0. Units follow the case: length in m, time in week.
 */

#pragma once

#include "wellfn/approx.hpp"

#include <span>
#include <string>
#include <vector>

namespace wellfn {

struct AquiferCase {
    double transmissivity = 10000.0;  // m^2/week
    double storativity = 0.2;         // dimensionless, (0, 1]
    double tau = 1.0;                 // week
    std::vector<double> radii = {1050.0, 2100.0, 3150.0, 4200.0};  // m
    double t_start = 2.0;             // week
    double t_end = 18.0;              // week
    double t_step = 1.0;              // week
    double pumping_rate = 1.0;        // m^3/week, drawdown only

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// t_start, t_start + t_step, ... up to t_end (inclusive, with 1e-9 slack).
    [[nodiscard]] std::vector<double> times() const;
};

struct KernelSample {
    double r = 0.0;
    double t = 0.0;
    double u_on = 0.0;
    double u_off = 0.0;
    double U_ref = 0.0;
    double U = 0.0;
    double pe_percent = 0.0;
    /// u_off beyond the underflow cap: the subtracted term was taken as 0.
    bool off_term_dropped = false;
};

double theis_u(double r, double t, double storativity, double transmissivity);

double drawdown(double r, double t, const AquiferCase& c, const WellRoute& route);

/// Throws std::domain_error for t <= tau.
KernelSample discrete_kernel(double r, double t, const AquiferCase& c, const WellRoute& route);

/// Cartesian grid radii x times, r-major. Parallel over samples.
std::vector<KernelSample> kernel_sweep(const AquiferCase& c, const WellRoute& route);
std::vector<KernelSample> kernel_sweep_serial(const AquiferCase& c, const WellRoute& route);

struct KernelSummary {
    double max_abs_pe = 0.0;
    double argmax_r = 0.0;
    double argmax_t = 0.0;
    double u_min = 0.0;
    double u_max = 0.0;
    /// Largest |PE| of W itself at the u values the kernel touched.
    double max_pointwise_pe = 0.0;
    /// max_abs_pe / max_pointwise_pe: how much the subtraction amplifies error.
    double amplification = 0.0;
};

KernelSummary summarize(std::span<const KernelSample> samples, const WellRoute& route);

/// Reads key=value lines (keys T, S, tau, radii, t_start, t_end, t_step, Q;
/// '#' starts a comment) over the defaults.
AquiferCase parse_aquifer_config(const std::string& text, AquiferCase base = {});

}  // namespace wellfn
