#include "wellfn/kernel.hpp"

#include "wellfn/detail/checks.hpp"
#include "wellfn/detail/format.hpp"
#include "wellfn/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wellfn {

namespace {

void require_field(bool ok, const char* what) {
    if (!ok) {
        throw std::invalid_argument(std::string("aquifer case: ") + what);
    }
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& key, const std::string& text) {
    const auto v = detail::parse_double(trim(text));
    if (!v) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + text + "'");
    }
    return *v;
}

}  // namespace

void AquiferCase::validate() const {
    require_field(std::isfinite(transmissivity) && transmissivity > 0.0, "T must be > 0");
    require_field(std::isfinite(storativity) && storativity > 0.0 && storativity <= 1.0,
                  "S must lie in (0, 1]");
    require_field(std::isfinite(tau) && tau > 0.0, "tau must be > 0");
    require_field(!radii.empty(), "at least one radius is required");
    for (double r : radii) {
        require_field(std::isfinite(r) && r > 0.0, "radii must be > 0");
    }
    require_field(std::isfinite(t_start) && t_start > tau, "t_start must exceed tau");
    require_field(std::isfinite(t_end) && t_end >= t_start, "t_end must be >= t_start");
    require_field(std::isfinite(t_step) && t_step > 0.0, "t_step must be > 0");
    require_field(std::isfinite(pumping_rate) && pumping_rate >= 0.0, "Q must be >= 0");
}

std::vector<double> AquiferCase::times() const {
    std::vector<double> t;
    for (int i = 0;; ++i) {
        const double ti = t_start + i * t_step;
        if (ti > t_end + 1e-9 * t_step) {
            break;
        }
        t.push_back(ti);
    }
    return t;
}

double theis_u(double r, double t, double storativity, double transmissivity) {
    detail::require_positive(r, "r");
    detail::require_positive(t, "t");
    detail::require_positive(storativity, "S");
    detail::require_positive(transmissivity, "T");
    return r * r * storativity / (4.0 * transmissivity * t);
}

double drawdown(double r, double t, const AquiferCase& c, const WellRoute& route) {
    const double u = theis_u(r, t, c.storativity, c.transmissivity);
    if (c.pumping_rate == 0.0) {
        return 0.0;
    }
    return c.pumping_rate / (4.0 * std::numbers::pi * c.transmissivity) * evaluate(route, u);
}

KernelSample discrete_kernel(double r, double t, const AquiferCase& c, const WellRoute& route) {
    if (!(t > c.tau)) {
        detail::domain_fail("t", t, "the kernel is defined only for t > tau");
    }
    KernelSample s;
    s.r = r;
    s.t = t;
    s.u_on = theis_u(r, t, c.storativity, c.transmissivity);
    s.u_off = theis_u(r, t - c.tau, c.storativity, c.transmissivity);
    if (s.u_on > underflow_cap) {
        detail::domain_fail("u_on", s.u_on, "kernel underflows binary64");
    }
    s.off_term_dropped = s.u_off > underflow_cap;

    const double scale = 1.0 / (4.0 * std::numbers::pi * c.transmissivity);
    const double ref_off = s.off_term_dropped ? 0.0 : e1(s.u_off);
    s.U_ref = scale * (e1(s.u_on) - ref_off);
    if (std::holds_alternative<Reference>(route)) {
        s.U = s.U_ref;
    } else {
        const double off = s.off_term_dropped ? 0.0 : evaluate(route, s.u_off);
        s.U = scale * (evaluate(route, s.u_on) - off);
    }
    s.pe_percent = percentage_error(s.U_ref, s.U);
    return s;
}

std::vector<KernelSample> kernel_sweep_serial(const AquiferCase& c, const WellRoute& route) {
    c.validate();
    const std::vector<double> t = c.times();
    std::vector<KernelSample> out;
    out.reserve(c.radii.size() * t.size());
    for (double r : c.radii) {
        for (double ti : t) {
            out.push_back(discrete_kernel(r, ti, c, route));
        }
    }
    return out;
}

std::vector<KernelSample> kernel_sweep(const AquiferCase& c, const WellRoute& route) {
    c.validate();
    const std::vector<double> t = c.times();
    const std::size_t nt = t.size();
    const auto n = static_cast<std::ptrdiff_t>(c.radii.size() * nt);
    std::vector<KernelSample> out(static_cast<std::size_t>(n));

    std::ptrdiff_t first_failure = n;
    std::string failure_message;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            out[idx] = discrete_kernel(c.radii[idx / nt], t[idx % nt], c, route);
        } catch (const std::exception& e) {
#pragma omp critical(wellfn_kernel_failure)
            {
                if (i < first_failure) {
                    first_failure = i;
                    failure_message = e.what();
                }
            }
        }
    }
    if (first_failure < n) {
        throw std::domain_error(failure_message);
    }
    return out;
}

KernelSummary summarize(std::span<const KernelSample> samples, const WellRoute& route) {
    KernelSummary s;
    if (samples.empty()) {
        return s;
    }
    s.max_abs_pe = -1.0;
    s.u_min = samples.front().u_on;
    s.u_max = samples.front().u_off;
    for (const KernelSample& k : samples) {
        const double a = std::abs(k.pe_percent);
        if (a > s.max_abs_pe) {
            s.max_abs_pe = a;
            s.argmax_r = k.r;
            s.argmax_t = k.t;
        }
        s.u_min = std::min(s.u_min, k.u_on);
        s.u_max = std::max(s.u_max, k.u_off);
        for (double u : {k.u_on, k.u_off}) {
            if (u > underflow_cap) {
                continue;
            }
            const double pe = std::abs(percentage_error(e1(u), evaluate(route, u)));
            s.max_pointwise_pe = std::max(s.max_pointwise_pe, pe);
        }
    }
    s.amplification = s.max_pointwise_pe > 0.0 ? s.max_abs_pe / s.max_pointwise_pe : 0.0;
    return s;
}

AquiferCase parse_aquifer_config(const std::string& text, AquiferCase base) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "T") {
            base.transmissivity = parse_number(key, value);
        } else if (key == "S") {
            base.storativity = parse_number(key, value);
        } else if (key == "tau") {
            base.tau = parse_number(key, value);
        } else if (key == "t_start") {
            base.t_start = parse_number(key, value);
        } else if (key == "t_end") {
            base.t_end = parse_number(key, value);
        } else if (key == "t_step") {
            base.t_step = parse_number(key, value);
        } else if (key == "Q") {
            base.pumping_rate = parse_number(key, value);
        } else if (key == "radii") {
            base.radii.clear();
            std::istringstream list(value);
            std::string item;
            while (std::getline(list, item, ',')) {
                base.radii.push_back(parse_number(key, item));
            }
        } else {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    return base;
}

}  // namespace wellfn
