#include "wellfn/cli.hpp"

#include "wellfn/approx.hpp"
#include "wellfn/bounds.hpp"
#include "wellfn/detail/format.hpp"
#include "wellfn/fit.hpp"
#include "wellfn/grid.hpp"
#include "wellfn/kernel.hpp"
#include "wellfn/reference.hpp"
#include "wellfn/series.hpp"
#include "wellfn/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wellfn::cli {

namespace {

using detail::format_double;

struct GridFlags {
    double u_min;
    double u_max;
    int points;
    std::string spacing;

    explicit GridFlags(const GridSpec& g)
        : u_min(g.u_min), u_max(g.u_max), points(g.n_points), spacing(to_string(g.spacing)) {}

    void attach(CLI::App* app) {
        app->add_option("--u-min", u_min, "Smallest grid point")->capture_default_str();
        app->add_option("--u-max", u_max, "Largest grid point")->capture_default_str();
        app->add_option("--points", points, "Number of grid points")->capture_default_str();
        app->add_option("--spacing", spacing, "Grid spacing")
            ->check(CLI::IsMember({"log", "linear"}))
            ->capture_default_str();
    }

    [[nodiscard]] GridSpec spec() const {
        GridSpec g{u_min, u_max, points, *parse_spacing(spacing)};
        g.validate();
        return g;
    }
};

std::vector<std::string> route_names() {
    std::vector<std::string> names{"reference"};
    for (ApproxKind k : all_approx_kinds) {
        names.emplace_back(to_string(k));
    }
    return names;
}

std::vector<std::string> kind_names() {
    std::vector<std::string> names;
    for (ApproxKind k : all_approx_kinds) {
        names.emplace_back(to_string(k));
    }
    return names;
}

std::string csv_row(std::initializer_list<std::string> fields) {
    std::string line;
    bool first = true;
    for (const auto& f : fields) {
        if (!first) {
            line += ',';
        }
        line += f;
        first = false;
    }
    line += '\n';
    return line;
}

std::string fmt(double x) { return format_double(x); }
std::string fmt(int x) { return std::to_string(x); }

// ---- subcommand bodies ----------------------------------------------------

void run_eval(std::ostream& out, const std::string& method, double u, bool derivative) {
    const WellRoute route = *parse_well_route(method);
    if (derivative) {
        double d = 0.0;
        if (std::holds_alternative<Reference>(route)) {
            d = e1_derivative_exact(u);
        } else {
            d = dw_du(std::get<ApproxKind>(route), u);
        }
        out << "u,dw_du\n" << csv_row({fmt(u), fmt(d)});
    } else {
        out << "u,value\n" << csv_row({fmt(u), fmt(evaluate(route, u))});
    }
}

void run_converge(std::ostream& out, const GridSpec& grid, double rel_target, int n_max) {
    out << "u,classical_terms,ramanujan_terms,asymptotic_best_n,asymptotic_best_rel_error\n";
    for (double u : make_grid(grid)) {
        const auto c = terms_to_converge(SeriesMethod::classical, u, rel_target);
        const auto r = terms_to_converge(SeriesMethod::ramanujan, u, rel_target);
        const AsymptoticTruncation a = asymptotic_optimal_truncation(u, n_max);
        out << csv_row({fmt(u), c ? fmt(*c) : std::string{}, r ? fmt(*r) : std::string{},
                        fmt(a.best_n), fmt(a.best_abs_error / e1(u))});
    }
}

void run_bounds(std::ostream& out, const GridSpec& grid) {
    out << "u,lower,oracle,upper\n";
    for (double u : make_grid(grid)) {
        BoundPair b = e1_bounds(u);
        if (b.log_scale) {
            b = {std::exp(b.lower), std::exp(b.upper), false};
        }
        out << csv_row({fmt(u), fmt(b.lower), fmt(e1(u)), fmt(b.upper)});
    }
}

void write_sweep(std::ostream& out, const SweepReport& report) {
    if (report.target == SweepTarget::value) {
        out << "u,w_ref,w_approx,pe_percent\n";
    } else {
        out << "u,dw_ref,dw_approx,pe_percent\n";
    }
    for (const ErrorSample& s : report.samples) {
        out << csv_row({fmt(s.u), fmt(s.w_ref), fmt(s.w_approx), fmt(s.pe_percent)});
    }
    out << "# max_abs_pe," << fmt(report.max_abs_pe) << ",argmax_u," << fmt(report.argmax_u)
        << '\n';
}

void run_kernel(std::ostream& out, std::ostream& err, const AquiferCase& c,
                const std::string& method) {
    const WellRoute route = *parse_well_route(method);
    const std::vector<KernelSample> samples = kernel_sweep(c, route);
    out << "r,t,u_on,u_off,U_ref,U_approx,pe_percent\n";
    for (const KernelSample& k : samples) {
        out << csv_row({fmt(k.r), fmt(k.t), fmt(k.u_on), fmt(k.u_off), fmt(k.U_ref), fmt(k.U),
                        fmt(k.pe_percent)});
    }
    const KernelSummary s = summarize(samples, route);
    err << "kernel " << method << ": " << samples.size() << " samples, u in ["
        << fmt(s.u_min) << ", " << fmt(s.u_max) << "], max |PE| = " << fmt(s.max_abs_pe)
        << " at r = " << fmt(s.argmax_r) << ", t = " << fmt(s.argmax_t)
        << ", pointwise max |PE| = " << fmt(s.max_pointwise_pe)
        << ", amplification = " << fmt(s.amplification) << '\n';
}

Eq10Coefficients parse_init(const std::string& text) {
    if (text == "published") {
        return published_coefficients;
    }
    if (text == "neutral") {
        return {1.0, 1.0, 1.0, 1.0, 1.0};
    }
    std::array<double, 5> a{};
    std::istringstream in(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(in, item, ',')) {
        const auto v = detail::parse_double(item);
        if (!v || i >= a.size()) {
            throw CLI::ValidationError("--init", "expected 'published', 'neutral' or a1,a2,a3,a4,a5");
        }
        a[i++] = *v;
    }
    if (i != a.size()) {
        throw CLI::ValidationError("--init", "expected five comma-separated coefficients");
    }
    return Eq10Coefficients::from_array(a);
}

void run_fit(std::ostream& out, std::ostream& err, int points, double u_min, double u_max,
             const Eq10Coefficients& init, const FitOptions& options,
             const std::string& trace_path) {
    const std::vector<double> grid = fit_default_grid(points, u_min, u_max);
    const FitResult r = fit_eq9(grid, init, options);
    const Eq10Coefficients& c = r.coefficients;
    out << "a1,a2,a3,a4,a5,iterations,final_residual_norm,max_pe_percent,converged,stop\n";
    out << csv_row({fmt(c.a1), fmt(c.a2), fmt(c.a3), fmt(c.a4), fmt(c.a5), fmt(r.iterations),
                    fmt(r.final_residual_norm), fmt(r.max_pe_over_fit_domain),
                    r.converged ? "1" : "0", std::string(to_string(r.stop))});
    if (!trace_path.empty()) {
        std::ofstream trace(trace_path);
        if (!trace) {
            throw std::runtime_error("cannot open trace file " + trace_path);
        }
        trace << "iteration,accepted,lambda,residual_norm,a1,a2,a3,a4,a5\n";
        for (const FitIteration& it : r.trace) {
            const Eq10Coefficients& k = it.coefficients;
            trace << csv_row({fmt(it.iteration), it.accepted ? "1" : "0", fmt(it.lambda),
                              fmt(it.residual_norm), fmt(k.a1), fmt(k.a2), fmt(k.a3),
                              fmt(k.a4), fmt(k.a5)});
        }
    }
    err << "fit: " << r.iterations << " iterations, stop = " << to_string(r.stop)
        << ", prefactor a2^a1 = " << fmt(c.prefactor()) << ", decay a1*a3 = "
        << fmt(c.decay_rate()) << '\n';
}

void run_table1(std::ostream& out, const GridSpec& grid) {
    out << "source,max_pe_w,max_pe_dw\n";
    for (ApproxKind k : {ApproxKind::swamee_ojha, ApproxKind::barry, ApproxKind::vatankhah,
                         ApproxKind::proposed}) {
        const SweepReport w = sweep(k, grid, SweepTarget::value);
        const SweepReport d = sweep(k, grid, SweepTarget::derivative);
        out << csv_row({std::string(to_string(k)), fmt(w.max_abs_pe), fmt(d.max_abs_pe)});
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Theis well function W(u) = E1(u): approximations, error sweeps, kernels",
                 "wellfn"};
    app.require_subcommand(1);

    std::string out_path;
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write CSV to this file instead of standard output");
    };

    // eval
    std::string eval_method;
    double eval_u = 0.0;
    bool eval_derivative = false;
    auto* eval = app.add_subcommand("eval", "Evaluate W(u) at a single point");
    eval->add_option("--method", eval_method, "Evaluation route")
        ->required()
        ->check(CLI::IsMember(route_names()));
    eval->add_option("--u", eval_u, "Argument u > 0")->required();
    eval->add_flag("--derivative", eval_derivative, "Evaluate dW/du instead");
    add_out(eval);

    // converge
    GridFlags converge_grid(GridSpec{0.1, 20.0, 40, Spacing::log});
    double rel_target = 1e-6;
    int asym_n_max = 200;
    auto* converge = app.add_subcommand("converge", "Series term counts to reach a relative target");
    converge_grid.attach(converge);
    converge->add_option("--rel-target", rel_target, "Relative accuracy target")->capture_default_str();
    converge->add_option("--asymptotic-n-max", asym_n_max, "Largest asymptotic order scanned")
        ->capture_default_str();
    add_out(converge);

    // bounds
    GridFlags bounds_grid(default_sweep_grid);
    auto* bounds = app.add_subcommand("bounds", "Two-sided bounds on E1(u) next to the reference");
    bounds_grid.attach(bounds);
    add_out(bounds);

    // sweep
    GridFlags sweep_grid(default_sweep_grid);
    std::string sweep_method;
    std::string sweep_target = "value";
    auto* sweep_cmd = app.add_subcommand("sweep", "Percentage error of one route over a grid");
    sweep_cmd->add_option("--method", sweep_method, "Approximation")
        ->required()
        ->check(CLI::IsMember(kind_names()));
    sweep_cmd->add_option("--target", sweep_target, "value or derivative")
        ->check(CLI::IsMember({"value", "derivative"}))
        ->capture_default_str();
    sweep_grid.attach(sweep_cmd);
    add_out(sweep_cmd);

    // kernel
    AquiferCase kcase;
    std::string kernel_method = "proposed";
    std::string config_path;
    auto* kernel = app.add_subcommand("kernel", "Discrete pumping kernel over radii x times");
    kernel->add_option("--method", kernel_method, "Evaluation route")
        ->check(CLI::IsMember(route_names()))
        ->capture_default_str();
    kernel->add_option("--config", config_path, "key=value case file (flags override it)")
        ->check(CLI::ExistingFile);
    auto* opt_T = kernel->add_option("--T", kcase.transmissivity, "Transmissivity, m^2/week");
    auto* opt_S = kernel->add_option("--S", kcase.storativity, "Storativity");
    auto* opt_tau = kernel->add_option("--tau", kcase.tau, "Pulse length, week");
    auto* opt_radii = kernel->add_option("--radii", kcase.radii, "Radii, m")->delimiter(',');
    auto* opt_t0 = kernel->add_option("--t-start", kcase.t_start, "First time, week");
    auto* opt_t1 = kernel->add_option("--t-end", kcase.t_end, "Last time, week");
    auto* opt_dt = kernel->add_option("--t-step", kcase.t_step, "Time step, week");
    auto* opt_Q = kernel->add_option("--Q", kcase.pumping_rate, "Pumping rate, m^3/week");
    add_out(kernel);

    // fit
    int fit_points = 500;
    double fit_u_min = 1.0;
    double fit_u_max = 100.0;
    std::string fit_init = "published";
    FitOptions fit_options;
    std::string trace_path;
    auto* fit = app.add_subcommand("fit", "Refit the large-u coefficients a1..a5");
    fit->add_option("--points", fit_points, "Fit grid size")->capture_default_str();
    fit->add_option("--u-min", fit_u_min, "Exclusive lower edge of the fit grid")->capture_default_str();
    fit->add_option("--u-max", fit_u_max, "Upper edge of the fit grid")->capture_default_str();
    fit->add_option("--init", fit_init, "published, neutral, or a1,a2,a3,a4,a5")->capture_default_str();
    fit->add_option("--max-iter", fit_options.max_iter, "Iteration cap")->capture_default_str();
    fit->add_option("--tol", fit_options.tol, "Relative residual-norm change to stop")->capture_default_str();
    fit->add_option("--trace", trace_path, "Write the iteration trace CSV here");
    add_out(fit);

    // table1
    GridFlags table_grid(default_sweep_grid);
    auto* table1 = app.add_subcommand("table1", "Max |PE| of W and dW/du for the four closed forms");
    table_grid.attach(table1);
    add_out(table1);

    std::vector<std::string> argv_store{"wellfn"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    std::ostringstream buffer;
    try {
        if (eval->parsed()) {
            run_eval(buffer, eval_method, eval_u, eval_derivative);
        } else if (converge->parsed()) {
            run_converge(buffer, converge_grid.spec(), rel_target, asym_n_max);
        } else if (bounds->parsed()) {
            run_bounds(buffer, bounds_grid.spec());
        } else if (sweep_cmd->parsed()) {
            const ApproxKind kind = *parse_approx_kind(sweep_method);
            const SweepTarget target =
                sweep_target == "value" ? SweepTarget::value : SweepTarget::derivative;
            const SweepReport report = sweep(kind, sweep_grid.spec(), target);
            write_sweep(buffer, report);
            err << "sweep " << sweep_method << " " << sweep_target << ": "
                << report.samples.size() << " points, max |PE| = " << fmt(report.max_abs_pe)
                << " at u = " << fmt(report.argmax_u) << '\n';
        } else if (kernel->parsed()) {
            AquiferCase c;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                const std::string text((std::istreambuf_iterator<char>(in)),
                                       std::istreambuf_iterator<char>());
                c = parse_aquifer_config(text);
            }
            if (opt_T->count()) c.transmissivity = kcase.transmissivity;
            if (opt_S->count()) c.storativity = kcase.storativity;
            if (opt_tau->count()) c.tau = kcase.tau;
            if (opt_radii->count()) c.radii = kcase.radii;
            if (opt_t0->count()) c.t_start = kcase.t_start;
            if (opt_t1->count()) c.t_end = kcase.t_end;
            if (opt_dt->count()) c.t_step = kcase.t_step;
            if (opt_Q->count()) c.pumping_rate = kcase.pumping_rate;
            run_kernel(buffer, err, c, kernel_method);
        } else if (fit->parsed()) {
            run_fit(buffer, err, fit_points, fit_u_min, fit_u_max, parse_init(fit_init),
                    fit_options, trace_path);
        } else if (table1->parsed()) {
            run_table1(buffer, table_grid.spec());
        }
    } catch (const CLI::Error& e) {
        err << "wellfn: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "wellfn: " << e.what() << '\n';
        return exit_domain;
    }

    if (out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(out_path);
        if (!f) {
            err << "wellfn: cannot open " << out_path << '\n';
            return exit_domain;
        }
        f << buffer.str();
    }
    return exit_ok;
}

}  // namespace wellfn::cli
