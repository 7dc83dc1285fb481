/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_VERIFY_HPP
#define FRACWAVE_VERIFY_HPP

#include <optional>
#include <vector>

#include "fracwave/asymptotics.hpp"
#include "fracwave/groundstate.hpp"

// Solve-then-check orchestration shared by the CLI and the test suites: the
// ground state is computed, then every applicable theorem check is run.
// Applicability: first order always; second order for positive profiles;
// derivatives j up to min(3, floor(p)) for the signed power (up to 3 for
// integer powers); the cubic refinement for integer p = 3 with alpha > 1.

namespace fracwave::verify {

struct VerificationRun {
    ProblemParams params;
    Profile profile;
    groundstate::ConvergenceReport convergence;
    asymptotics::TailCoefficients coefficients;
    asymptotics::RegimeClass regime;
    std::vector<asymptotics::TailReport> reports;
    bool all_pass = false;
};

inline VerificationRun run_verification(
    const ProblemParams& params, const Grid& grid,
    const groundstate::SolverOptions& solver_opts = {},
    const specfun::EvalOptions& eval_opts = {},
    std::optional<asymptotics::FitWindow> window = std::nullopt) {
    VerificationRun run{params, Profile{}, {}, {}, {}, {}, false};
    auto [q, report] = groundstate::solve_ground_state(params, grid, solver_opts);
    run.profile = std::move(q);
    run.convergence = std::move(report);
    run.coefficients = asymptotics::tail_coefficients(run.profile, params, eval_opts);
    run.regime = asymptotics::classify_regime(params);

    run.reports.push_back(
        asymptotics::verify_first_order(run.profile, params, run.coefficients, window));

    bool positive = true;
    for (double v : run.profile.values)
        if (v <= 0.0) positive = false;
    if (positive)
        run.reports.push_back(asymptotics::verify_second_order(run.profile, params,
                                                               run.coefficients, run.regime,
                                                               window));

    int j_max = 3;
    if (params.kind == Nonlinearity::signed_power)
        j_max = std::min(j_max, static_cast<int>(std::floor(params.p)));
    for (int j = 1; j <= j_max; ++j)
        run.reports.push_back(
            asymptotics::verify_derivative_order(run.profile, params, run.coefficients, j, window));

    if (params.kind == Nonlinearity::integer_power && std::abs(params.p - 3.0) < 1e-12 &&
        params.alpha > 1.0 && params.alpha < 2.0) {
        auto [rq, rp] = asymptotics::verify_cubic_third_order(run.profile, params, eval_opts);
        run.reports.push_back(rq);
        run.reports.push_back(rp);
    }

    run.all_pass = true;
    for (const auto& r : run.reports)
        if (r.status == asymptotics::CheckStatus::fail) run.all_pass = false;
    return run;
}

}  // namespace fracwave::verify

#endif
