#include "wellfn/fit.hpp"

#include "wellfn/detail/checks.hpp"
#include "wellfn/reference.hpp"

// Thread-count-dependent blocking inside Eigen would break bit-reproducibility.
#define EIGEN_DONT_PARALLELIZE
#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace wellfn {

namespace {

constexpr int n_params = 5;
constexpr std::size_t min_fit_points = 50;

using Vector5 = Eigen::Matrix<double, n_params, 1>;

// the model's logarithms need a2 > 0 and a4 > 0 (u > 1 is checked up front)
bool admissible(const Eq10Coefficients& c) {
    return std::isfinite(c.a1) && std::isfinite(c.a2) && std::isfinite(c.a3) &&
           std::isfinite(c.a4) && std::isfinite(c.a5) && c.a2 > 0.0 && c.a4 > 0.0;
}

double model(double u, const Eq10Coefficients& c) {
    const double inner = std::log1p(c.a4 * std::pow(u, -c.a5));
    return c.a1 * (std::log(c.a2) - c.a3 * u + std::log(inner));
}

// The optimizer iterates on theta = (a1 ln a2, a1 a3, a1, a4, a5). The model
// is linear in the first two, which straightens the valley that the a1, a2,
// a3 coordinates bend; the objective and its minimizers are unchanged.
using Theta = Vector5;

Theta to_theta(const Eq10Coefficients& c) {
    Theta t;
    t << c.a1 * std::log(c.a2), c.a1 * c.a3, c.a1, c.a4, c.a5;
    return t;
}

// Requires theta[2] = a1 != 0.
Eq10Coefficients from_theta(const Theta& t) {
    return {t[2], std::exp(t[0] / t[2]), t[1] / t[2], t[3], t[4]};
}

bool admissible_theta(const Theta& t) { return t.allFinite() && t[2] > 0.0 && t[3] > 0.0; }

std::array<double, 5> theta_row(double u, const Theta& t) {
    const double upow = std::pow(u, -t[4]);
    const double x = t[3] * upow;
    const double inner = std::log1p(x);
    const double dinner_dx = 1.0 / ((1.0 + x) * inner);
    return {1.0, -u, std::log(inner), t[2] * upow * dinner_dx, t[2] * (-x * std::log(u)) * dinner_dx};
}

class Problem {
public:
    explicit Problem(std::span<const double> u) : u_(u.begin(), u.end()), log_ref_(u.size()) {
        for (std::size_t j = 0; j < u_.size(); ++j) {
            log_ref_[j] = std::log(e1(u_[j]));
        }
    }

    [[nodiscard]] std::size_t size() const { return u_.size(); }

    // Residual vector, evaluated in parallel; index-addressed so the result is
    // independent of the thread count.
    std::vector<double> residuals(const Eq10Coefficients& c) const {
        std::vector<double> r(u_.size());
        const auto n = static_cast<std::ptrdiff_t>(u_.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            const auto i = static_cast<std::size_t>(j);
            r[i] = log_ref_[i] - model(u_[i], c);
        }
        return r;
    }

    // Model Jacobian, one row per grid point, rows computed in parallel.
    template <class Params, class Row>
    [[nodiscard]] Eigen::MatrixXd jacobian(const Params& c, Row row_of) const {
        Eigen::MatrixXd jac(static_cast<Eigen::Index>(u_.size()), n_params);
        const auto n = static_cast<std::ptrdiff_t>(u_.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            const auto row = row_of(u_[static_cast<std::size_t>(j)], c);
            for (int k = 0; k < n_params; ++k) {
                jac(j, k) = row[static_cast<std::size_t>(k)];
            }
        }
        return jac;
    }

    // J^T r accumulated in index order.
    [[nodiscard]] Vector5 jtr(const Eigen::MatrixXd& jac, const std::vector<double>& r) const {
        Vector5 g = Vector5::Zero();
        for (Eigen::Index i = 0; i < jac.rows(); ++i) {
            g.noalias() += jac.row(i).transpose() * r[static_cast<std::size_t>(i)];
        }
        return g;
    }

    [[nodiscard]] double max_pe(const Eq10Coefficients& c) const {
        double worst = 0.0;
        for (std::size_t i = 0; i < u_.size(); ++i) {
            const double ref = std::exp(log_ref_[i]);
            worst = std::max(worst, std::abs(percentage_error(ref, eq10(u_[i], c))));
        }
        return worst;
    }

private:
    std::vector<double> u_;
    std::vector<double> log_ref_;
};

double norm(const std::vector<double>& r) {
    double s = 0.0;
    for (double x : r) {
        s += x * x;
    }
    return std::sqrt(s);
}

bool all_finite(const std::vector<double>& r) {
    for (double x : r) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

void check_grid(std::span<const double> u) {
    if (u.size() < n_params) {
        throw std::invalid_argument("fit is underdetermined: " + std::to_string(u.size()) +
                                    " point(s) for 5 parameters");
    }
    if (u.size() < min_fit_points) {
        throw std::invalid_argument("fit needs at least 50 grid points, got " +
                                    std::to_string(u.size()));
    }
    for (double x : u) {
        if (!std::isfinite(x) || !(x > 1.0) || x > 100.0) {
            detail::domain_fail("u", x, "fit points must lie in (1, 100]");
        }
    }
}

}  // namespace

std::string_view to_string(FitStop s) {
    switch (s) {
        case FitStop::tolerance: return "tolerance";
        case FitStop::stagnation: return "stagnation";
        case FitStop::max_iterations: return "max_iterations";
    }
    return "unknown";
}

std::vector<double> fit_default_grid(int n, double u_min, double u_max) {
    if (n < 1 || !(u_min > 0.0) || !(u_max > u_min)) {
        throw std::invalid_argument("fit grid requires n >= 1 and 0 < u_min < u_max");
    }
    std::vector<double> u(static_cast<std::size_t>(n));
    const double lo = std::log(u_min);
    const double span = std::log(u_max) - lo;
    for (int j = 1; j <= n; ++j) {
        u[static_cast<std::size_t>(j - 1)] = std::exp(lo + span * (static_cast<double>(j) / n));
    }
    u.back() = u_max;
    return u;
}

std::array<double, 5> jacobian_eq9(double u, const Eq10Coefficients& c) {
    detail::require_positive(u, "u");
    if (!admissible(c)) {
        throw std::domain_error("jacobian_eq9: coefficients must keep a2 > 0 and a4 > 0");
    }
    const double upow = std::pow(u, -c.a5);
    const double x = c.a4 * upow;
    const double inner = std::log1p(x);
    if (!(inner > 0.0)) {
        detail::domain_fail("ln(1 + a4/u^a5)", inner, "must be > 0");
    }
    const double dinner_dx = 1.0 / ((1.0 + x) * inner);  // d ln(inner) / dx
    return {
        std::log(c.a2) - c.a3 * u + std::log(inner),
        c.a1 / c.a2,
        -c.a1 * u,
        c.a1 * upow * dinner_dx,
        c.a1 * (-x * std::log(u)) * dinner_dx,
    };
}

std::vector<double> fit_residuals(std::span<const double> u, const Eq10Coefficients& c) {
    return Problem(u).residuals(c);
}

std::array<double, 5> objective_gradient(std::span<const double> u, const Eq10Coefficients& c) {
    const Problem p(u);
    const std::vector<double> r = p.residuals(c);
    const Vector5 g = p.jtr(p.jacobian(c, jacobian_eq9), r);
    // residual = ln E1 - model, so d r / d a = -J
    return {-g[0], -g[1], -g[2], -g[3], -g[4]};
}

FitResult fit_eq9(std::span<const double> u, const Eq10Coefficients& init,
                  const FitOptions& options) {
    check_grid(u);
    if (!init.all_positive()) {
        throw std::invalid_argument("fit initial coefficients must all be > 0");
    }
    if (options.max_iter < 1 || !(options.tol > 0.0)) {
        throw std::invalid_argument("fit options require max_iter >= 1 and tol > 0");
    }

    const Problem problem(u);
    FitResult result;
    Eq10Coefficients a = init;
    Theta theta = to_theta(a);
    std::vector<double> r = problem.residuals(a);
    double current = norm(r);
    result.initial_residual_norm = current;
    double lambda = options.initial_lambda;

    Eigen::MatrixXd jac = problem.jacobian(theta, theta_row);
    const Eigen::Index m = jac.rows();

    result.stop = FitStop::max_iterations;
    int iter = 0;
    while (iter < options.max_iter) {
        ++iter;
        // min |J d - r|^2 + lambda |D d|^2 with D = diag(column norms of J),
        // solved by QR of the stacked system instead of the squared normal equations
        Eigen::MatrixXd stacked = Eigen::MatrixXd::Zero(m + n_params, n_params);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + n_params);
        stacked.topRows(m) = jac;
        for (Eigen::Index i = 0; i < m; ++i) {
            rhs[i] = r[static_cast<std::size_t>(i)];
        }
        for (int k = 0; k < n_params; ++k) {
            stacked(m + k, k) = std::sqrt(lambda) * jac.col(k).norm();
        }
        const Vector5 step = stacked.colPivHouseholderQr().solve(rhs);

        const Theta trial_theta = theta + step;
        Eq10Coefficients trial = a;
        bool accepted = false;
        double trial_norm = current;
        std::vector<double> trial_r;
        if (admissible_theta(trial_theta) && admissible(trial = from_theta(trial_theta))) {
            trial_r = problem.residuals(trial);
            if (all_finite(trial_r)) {
                trial_norm = norm(trial_r);
                accepted = trial_norm < current;
            }
        }

        if (accepted) {
            const double rel_change = (current - trial_norm) / current;
            a = trial;
            theta = trial_theta;
            r = std::move(trial_r);
            current = trial_norm;
            lambda /= 10.0;
            result.trace.push_back({iter, lambda, current, true, a});
            if (rel_change < options.tol) {
                result.stop = FitStop::tolerance;
                break;
            }
            jac = problem.jacobian(theta, theta_row);
        } else {
            lambda *= 10.0;
            result.trace.push_back({iter, lambda, current, false, a});
            if (lambda > options.max_lambda) {
                result.stop = FitStop::stagnation;
                break;
            }
        }
    }

    result.coefficients = a;
    result.iterations = iter;
    result.final_residual_norm = current;
    result.max_pe_over_fit_domain = problem.max_pe(a);
    result.converged = result.stop != FitStop::max_iterations &&
                       result.max_pe_over_fit_domain <= fit_pe_limit;
    return result;
}

}  // namespace wellfn
