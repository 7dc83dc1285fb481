/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_GROUNDSTATE_HPP
#define FRACWAVE_GROUNDSTATE_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fracwave/grid.hpp"
#include "fracwave/params.hpp"
#include "fracwave/spectral.hpp"

// Petviashvili-type solver for |D|^alpha Q + Q = f(Q), iterating the
// convolution form Q = k * f(Q) with a homogeneity-correcting factor M^gamma.

namespace fracwave::groundstate {

enum class InitialGuess { lorentzian, sech2, custom };

struct SolverOptions {
    int max_iter = 2000;
    double tol_residual = 1e-10;
    double tol_m = 1e-12;
    double gamma = 0.0;  // 0: use p/(p-1)
    InitialGuess init = InitialGuess::lorentzian;
    std::vector<double> custom_init;

    void validate() const {
        if (!(tol_residual > 0.0)) throw std::domain_error("SolverOptions: tol_residual must be > 0");
        if (gamma != 0.0 && !(gamma > 1.0)) throw std::domain_error("SolverOptions: gamma must be > 1");
        if (max_iter < 1) throw std::domain_error("SolverOptions: max_iter must be >= 1");
    }
};

struct ConvergenceReport {
    int iterations = 0;
    double final_residual = 0.0;
    double final_m = 0.0;
    std::vector<double> residual_history;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& msg, ConvergenceReport rep)
        : std::runtime_error(msg), report(std::move(rep)) {}
    ConvergenceReport report;
};

class InstabilityError : public std::runtime_error {
  public:
    InstabilityError(const std::string& msg, ConvergenceReport rep)
        : std::runtime_error(msg), report(std::move(rep)) {}
    ConvergenceReport report;
};

// One stabilized fixed-point step. Returns the new iterate and the factor
// M = <u,(1+|D|^a)u> / <u,f(u)>, which is 1 at a solution.
inline std::pair<Profile, double> iterate_step(const Profile& u, const ProblemParams& params,
                                               double gamma) {
    Profile fu = spectral::nonlinearity(u, params);
    Profile lu = spectral::apply_riesz(u, params.alpha);
    double num = spectral::inner_product(u, u) + spectral::inner_product(u, lu);
    double den = spectral::inner_product(u, fu);
    if (den == 0.0 || !std::isfinite(den))
        throw std::domain_error("iterate_step: degenerate iterate, <u,f(u)> = 0");
    double m = num / den;
    Profile w = spectral::apply_resolvent(fu, params.alpha);
    double factor = std::pow(m, gamma);
    for (auto& v : w.values) v *= factor;
    return {std::move(w), m};
}

inline Profile initial_profile(const ProblemParams& params, const Grid& grid,
                               const SolverOptions& opts) {
    switch (opts.init) {
        case InitialGuess::custom:
            return Profile::make(grid, opts.custom_init);
        case InitialGuess::sech2:
            return Profile::sample(grid, [](double x) {
                double c = std::cosh(0.5 * x);
                return 1.5 / (c * c);
            });
        case InitialGuess::lorentzian:
        default:
            // amplitude 2, tail order matched to the expected x^{-(alpha+1)} decay
            return Profile::sample(grid, [&](double x) {
                return 2.0 * std::pow(1.0 + x * x, -0.5 * (params.alpha + 1.0));
            });
    }
}

// Circular shift of the argmax to the center bin, then sub-grid centering by
// quadratic interpolation of the peak.
inline Profile center(const Profile& u) {
    const std::size_t n = u.size();
    std::size_t imax = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (u.values[j] > u.values[imax]) imax = j;
    std::vector<double> shifted(n);
    const std::size_t mid = n / 2;
    for (std::size_t j = 0; j < n; ++j) shifted[j] = u.values[(j + imax + n - mid) % n];
    Profile out = Profile::make(u.grid, std::move(shifted));
    // a few refinement rounds; one parabola fit leaves O(dx^2 delta) skew
    for (int round = 0; round < 3; ++round) {
        double ym = out.values[mid - 1], y0 = out.values[mid], yp = out.values[mid + 1];
        double denom = ym - 2.0 * y0 + yp;
        if (!(denom < 0.0)) break;
        double delta = 0.5 * (ym - yp) / denom * u.grid.spacing();
        if (std::abs(delta) <= 1e-9 * u.grid.spacing() || std::abs(delta) >= u.grid.spacing())
            break;
        out = spectral::fourier_shift(out, delta);
    }
    return out;
}

inline std::pair<Profile, ConvergenceReport> solve_ground_state(const ProblemParams& params,
                                                                const Grid& grid,
                                                                const SolverOptions& opts = {}) {
    opts.validate();
    const double gamma = opts.gamma != 0.0 ? opts.gamma : params.p / (params.p - 1.0);
    Profile u = initial_profile(params, grid, opts);
    ConvergenceReport rep;
    rep.residual_history.reserve(64);
    double m = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        auto [next, m_it] = iterate_step(u, params, gamma);
        u = std::move(next);
        m = m_it;
        auto [r, rmax] = spectral::residual(u, params);
        (void)r;
        rep.iterations = it;
        rep.final_residual = rmax;
        rep.final_m = m;
        rep.residual_history.push_back(rmax);
        if (!std::isfinite(rmax) || !std::isfinite(m))
            throw InstabilityError("solve_ground_state: NaN encountered", rep);
        if (rmax <= opts.tol_residual && std::abs(m - 1.0) <= opts.tol_m)
            return {center(u), rep};
    }
    throw ConvergenceError("solve_ground_state: not converged after max_iter", rep);
}

}  // namespace fracwave::groundstate

#endif
