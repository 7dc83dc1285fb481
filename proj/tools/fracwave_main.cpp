/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// fracwave: kernel tabulation, ground-state solving, asymptotic-expansion
// verification and (alpha, p) parameter sweeps.
//
// Exit codes: 0 success, 2 usage or parameter validation, 3 solver
// non-convergence, 4 verification failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fracwave/fracwave.hpp"

namespace fw = fracwave;
using fw::io::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_no_convergence = 3;
constexpr int exit_verification_failed = 4;

std::string timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct Range {
    double lo = 0.0, hi = 0.0, step = 0.0;
};

// "v" or "lo:hi:step", inclusive bounds, positive step
Range parse_range(const std::string& s) {
    Range r;
    auto c1 = s.find(':');
    if (c1 == std::string::npos) {
        r.lo = r.hi = std::stod(s);
        r.step = 1.0;
        return r;
    }
    auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("range must be lo:hi:step");
    r.lo = std::stod(s.substr(0, c1));
    r.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    r.step = std::stod(s.substr(c2 + 1));
    if (!(r.step > 0.0) || r.hi < r.lo) throw std::invalid_argument("range needs hi >= lo, step > 0");
    return r;
}

std::vector<double> expand(const Range& r) {
    std::vector<double> out;
    for (double v = r.lo; v <= r.hi + 1e-12 * r.step; v += r.step) out.push_back(v);
    return out;
}

fw::Nonlinearity resolve_kind(const std::string& kind, double p) {
    if (kind == "auto")
        return std::abs(p - std::round(p)) < 1e-12 ? fw::Nonlinearity::integer_power
                                                   : fw::Nonlinearity::signed_power;
    return fw::nonlinearity_from_string(kind);
}

std::optional<fw::asymptotics::FitWindow> parse_window(const std::string& w) {
    if (w.empty()) return std::nullopt;
    auto c = w.find(':');
    if (c == std::string::npos) throw std::invalid_argument("window must be lo:hi");
    fw::asymptotics::FitWindow fwnd;
    fwnd.x_lo = std::stod(w.substr(0, c));
    fwnd.x_hi = std::stod(w.substr(c + 1));
    return fwnd;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << text;
}

int run_kernel(double alpha, double xmin, double xmax, int points, double tol, int series_terms,
               const std::string& out) {
    if (!(xmax > xmin) || points < 2) {
        std::cerr << "kernel: empty or invalid x-range\n";
        return exit_usage;
    }
    fw::specfun::EvalOptions quad_opts;
    quad_opts.quad_rel_tol = tol;
    quad_opts.crossover_x = 1e9;  // force the quadrature route for the tabulated column
    quad_opts.series_terms = series_terms;
    fw::specfun::EvalOptions deriv_opts;
    deriv_opts.quad_rel_tol = tol;
    auto series = fw::specfun::KernelSeries::make(alpha, series_terms);
    std::ostringstream os;
    os << "x,k_quadrature,k_series,abs_diff";
    bool with_prime = alpha > 1.0;
    if (with_prime) os << ",k_prime";
    os << '\n';
    for (int i = 0; i < points; ++i) {
        double x = xmin + (xmax - xmin) * i / (points - 1);
        double kq = fw::specfun::k_eval(x, alpha, quad_opts);
        double ks = std::abs(x) > 1.0 ? fw::specfun::k_series_eval(x, series)
                                      : std::numeric_limits<double>::quiet_NaN();
        os << fw::io::fmt(x) << ',' << fw::io::fmt(kq) << ',' << fw::io::fmt(ks) << ','
           << fw::io::fmt(std::abs(kq - ks));
        if (with_prime) os << ',' << fw::io::fmt(fw::specfun::k_prime_eval(x, alpha, deriv_opts));
        os << '\n';
    }
    write_text(out, os.str());
    return exit_ok;
}

struct SolveArgs {
    double alpha = 1.0, p = 2.0;
    std::string kind = "auto";
    double L = 0.0;
    std::size_t n = 0;
    double tol = 1e-10;
    std::string init = "lorentzian";
};

std::pair<fw::ProblemParams, fw::Grid> resolve_problem(const SolveArgs& a) {
    fw::ProblemParams params = fw::ProblemParams::make(a.alpha, a.p, resolve_kind(a.kind, a.p));
    fw::Grid grid = (a.L > 0.0 && a.n > 0) ? fw::Grid::make(a.L, a.n)
                                           : fw::asymptotics::recommended_grid(params);
    return {params, grid};
}

fw::groundstate::SolverOptions solver_options(const SolveArgs& a) {
    fw::groundstate::SolverOptions so;
    so.tol_residual = a.tol;
    so.init = a.init == "sech2" ? fw::groundstate::InitialGuess::sech2
                                : fw::groundstate::InitialGuess::lorentzian;
    return so;
}

int run_solve(const SolveArgs& a, const std::string& out, const std::string& format) {
    auto [params, grid] = resolve_problem(a);
    try {
        auto [q, report] = fw::groundstate::solve_ground_state(params, grid, solver_options(a));
        if (format == "csv") {
            std::ostringstream os;
            fw::io::write_profile_csv(os, q);
            write_text(out, os.str());
        } else {
            json j;
            j["profile"] = fw::io::profile_envelope(q, params);
            j["convergence"] = fw::io::to_json(report);
            j["generated_at"] = timestamp();
            write_text(out, j.dump(2) + "\n");
        }
        return exit_ok;
    } catch (const fw::groundstate::ConvergenceError& e) {
        json j;
        j["error"] = e.what();
        j["convergence"] = fw::io::to_json(e.report);
        j["generated_at"] = timestamp();
        write_text(out, j.dump(2) + "\n");
        std::cerr << "solve: " << e.what() << "\n";
        return exit_no_convergence;
    }
}

std::string sweep_row(const fw::verify::VerificationRun& run) {
    auto status_of = [&](const std::string& tag) -> std::string {
        for (const auto& r : run.reports)
            if (r.theorem_tag == tag) return to_string(r.status);
        return "";
    };
    std::ostringstream os;
    os << fw::io::fmt(run.params.alpha) << ',' << fw::io::fmt(run.params.p) << ','
       << to_string(run.params.kind) << ',' << to_string(run.regime.value) << ','
       << fw::io::fmt(run.coefficients.a1) << ',' << status_of("first_order") << ','
       << status_of("second_order") << ',' << status_of("deriv_1") << ','
       << status_of("deriv_2") << ',' << status_of("deriv_3") << ','
       << status_of("cubic_third_order_q") << ',' << status_of("cubic_third_order_qprime") << ','
       << (run.all_pass ? "pass" : "fail");
    return os.str();
}

const char* sweep_header =
    "alpha,p,kind,regime,a1,first_order,second_order,deriv_1,deriv_2,deriv_3,"
    "cubic_third_order_q,cubic_third_order_qprime,all_pass";

int run_verify(const SolveArgs& a, const std::string& window, const std::string& out,
               const std::string& format) {
    auto [params, grid] = resolve_problem(a);
    auto wnd = parse_window(window);
    try {
        auto run = fw::verify::run_verification(params, grid, solver_options(a), {}, wnd);
        if (format == "csv") {
            write_text(out, std::string(sweep_header) + "\n" + sweep_row(run) + "\n");
        } else {
            json j = fw::io::verification_report(params, run.coefficients, run.regime, run.reports);
            j["convergence"] = fw::io::to_json(run.convergence);
            j["generated_at"] = timestamp();
            write_text(out, j.dump(2) + "\n");
        }
        return run.all_pass ? exit_ok : exit_verification_failed;
    } catch (const fw::groundstate::ConvergenceError& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return exit_no_convergence;
    }
}

int run_sweep(const std::string& alpha_range, const std::string& p_range, const std::string& kind,
              double tol, int jobs, const std::string& out) {
    std::vector<double> alphas = expand(parse_range(alpha_range));
    std::vector<double> ps = expand(parse_range(p_range));
    struct Pair {
        double alpha, p;
    };
    std::vector<Pair> pairs;
    for (double a : alphas)
        for (double p : ps) pairs.push_back({a, p});
    std::vector<std::string> rows(pairs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<int> valid{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) return;
            SolveArgs a;
            a.alpha = pairs[i].alpha;
            a.p = pairs[i].p;
            a.kind = kind;
            a.tol = tol;
            std::ostringstream os;
            try {
                auto [params, grid] = resolve_problem(a);
                auto run = fw::verify::run_verification(params, grid, solver_options(a));
                rows[i] = sweep_row(run);
                valid.fetch_add(1);
            } catch (const std::domain_error& e) {
                os << fw::io::fmt(a.alpha) << ',' << fw::io::fmt(a.p) << ",,invalid,,,,,,,,,";
                rows[i] = os.str();
            } catch (const std::exception& e) {
                os << fw::io::fmt(a.alpha) << ',' << fw::io::fmt(a.p) << ",,error,,,,,,,,,";
                rows[i] = os.str();
                valid.fetch_add(1);  // a failed run is still a valid pair
            }
        }
    };
    int n_workers = std::max(1, std::min<int>(jobs, static_cast<int>(pairs.size())));
    std::vector<std::future<void>> futs;
    for (int t = 0; t < n_workers; ++t) futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
    if (valid.load() == 0) {
        std::cerr << "sweep: every (alpha, p) pair is invalid\n";
        return exit_usage;
    }
    std::ostringstream os;
    os << sweep_header << '\n';
    for (const auto& r : rows) os << r << '\n';
    write_text(out, os.str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional ground-state toolkit: resolvent kernel evaluation, "
                 "Petviashvili solver, tail-expansion verification"};
    app.require_subcommand(1);

    // kernel
    auto* kernel = app.add_subcommand("kernel", "tabulate k (and k' for alpha > 1) as CSV");
    double k_alpha = 1.0, k_xmin = 1.0, k_xmax = 100.0, k_tol = 1e-10;
    int k_points = 200, k_terms = 2;
    std::string k_out = "-";
    kernel->add_option("--alpha", k_alpha, "dispersion order in (0,2)")->required();
    kernel->add_option("--xmin", k_xmin, "lower end of the x range");
    kernel->add_option("--xmax", k_xmax, "upper end of the x range");
    kernel->add_option("--points", k_points, "number of tabulation points");
    kernel->add_option("--tol", k_tol, "quadrature relative tolerance");
    kernel->add_option("--series-terms", k_terms, "series truncation order N");
    kernel->add_option("--out", k_out, "output path ('-' for stdout)");

    auto add_problem_flags = [](CLI::App* cmd, SolveArgs& a) {
        cmd->add_option("--alpha", a.alpha, "dispersion order in (0,2)")->required();
        cmd->add_option("--p", a.p, "nonlinearity exponent, 1 < p < p*(alpha)")->required();
        cmd->add_option("--kind", a.kind,
                        "signed_power | integer_power | auto (integer when p is integral)");
        cmd->add_option("--L", a.L, "half box length (0: choose from alpha, p)");
        cmd->add_option("--n", a.n, "grid points, power of two (0: choose from alpha, p)");
        cmd->add_option("--tol", a.tol, "residual max-norm target");
        cmd->add_option("--init", a.init, "initial guess: lorentzian | sech2");
    };

    // solve
    auto* solve = app.add_subcommand("solve", "compute the ground state profile");
    SolveArgs s_args;
    std::string s_out = "-", s_format = "json";
    add_problem_flags(solve, s_args);
    solve->add_option("--out", s_out, "output path");
    solve->add_option("--format", s_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // verify
    auto* verify = app.add_subcommand("verify", "solve and check the tail expansions");
    SolveArgs v_args;
    std::string v_out = "-", v_format = "json", v_window;
    add_problem_flags(verify, v_args);
    verify->add_option("--window", v_window, "fit window lo:hi (default: from the profile)");
    verify->add_option("--out", v_out, "output path");
    verify->add_option("--format", v_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // sweep
    auto* sweep = app.add_subcommand("sweep", "verify over an (alpha, p) grid");
    std::string w_alpha, w_p, w_kind = "auto", w_out = "-";
    double w_tol = 1e-10;
    int w_jobs = 1;
    sweep->add_option("--alpha", w_alpha, "alpha value or range lo:hi:step")->required();
    sweep->add_option("--p", w_p, "p value or range lo:hi:step")->required();
    sweep->add_option("--kind", w_kind, "nonlinearity kind (auto per pair by default)");
    sweep->add_option("--tol", w_tol, "residual max-norm target");
    sweep->add_option("--jobs", w_jobs, "concurrent verify runs");
    sweep->add_option("--out", w_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (kernel->parsed())
            return run_kernel(k_alpha, k_xmin, k_xmax, k_points, k_tol, k_terms, k_out);
        if (solve->parsed()) return run_solve(s_args, s_out, s_format);
        if (verify->parsed()) return run_verify(v_args, v_window, v_out, v_format);
        if (sweep->parsed()) return run_sweep(w_alpha, w_p, w_kind, w_tol, w_jobs, w_out);
    } catch (const std::domain_error& e) {
        std::cerr << "parameter validation: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_usage;
}
