/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_TESTS_SOLUTIONS_HPP
#define FRACWAVE_TESTS_SOLUTIONS_HPP

#include "fracwave/groundstate.hpp"

// Converged ground states shared across test cases (each solve runs once per
// binary).

namespace solutions {

inline const fracwave::Profile& benjamin_ono_solved() {
    using namespace fracwave;
    static Profile q = [] {
        auto params = ProblemParams::make(1.0, 2.0, Nonlinearity::integer_power);
        auto [prof, rep] = groundstate::solve_ground_state(params, Grid::make(400.0, 1u << 15));
        return prof;
    }();
    return q;
}

inline const fracwave::Profile& alpha15_p2_solved() {
    using namespace fracwave;
    static Profile q = [] {
        auto params = ProblemParams::make(1.5, 2.0, Nonlinearity::integer_power);
        auto [prof, rep] = groundstate::solve_ground_state(params, Grid::make(400.0, 1u << 15));
        return prof;
    }();
    return q;
}

}  // namespace solutions

#endif
