/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_GRID_HPP
#define FRACWAVE_GRID_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

// Uniform periodic grid on [-L, L) with N a power of two. Discrete
// wavenumbers are pi*m/L for m in [-N/2, N/2).
struct Grid {
    double half_length = 0.0;
    std::size_t n_points = 0;

    static Grid make(double half_length, std::size_t n_points) {
        if (!(half_length > 0.0)) throw std::domain_error("Grid: half_length must be > 0");
        if (n_points < 16 || (n_points & (n_points - 1)) != 0)
            throw std::domain_error("Grid: n_points must be a power of two >= 16");
        Grid g;
        g.half_length = half_length;
        g.n_points = n_points;
        return g;
    }

    double spacing() const { return 2.0 * half_length / static_cast<double>(n_points); }

    double x(std::size_t j) const { return -half_length + spacing() * static_cast<double>(j); }

    // signed frequency index for DFT bin j
    long signed_mode(std::size_t j) const {
        long m = static_cast<long>(j);
        long n = static_cast<long>(n_points);
        return m < n / 2 ? m : m - n;
    }

    double frequency(std::size_t j) const {
        return 3.14159265358979323846 * static_cast<double>(signed_mode(j)) / half_length;
    }

    std::vector<double> abscissae() const {
        std::vector<double> xs(n_points);
        for (std::size_t j = 0; j < n_points; ++j) xs[j] = x(j);
        return xs;
    }

    bool operator==(const Grid& o) const {
        return half_length == o.half_length && n_points == o.n_points;
    }
};

// Real-valued samples of a function on a Grid.
struct Profile {
    Grid grid;
    std::vector<double> values;

    static Profile make(const Grid& grid, std::vector<double> values) {
        if (values.size() != grid.n_points)
            throw DataError("Profile: sample count does not match grid");
        for (double v : values)
            if (!std::isfinite(v)) throw DataError("Profile: non-finite sample");
        Profile p;
        p.grid = grid;
        p.values = std::move(values);
        return p;
    }

    template <class F>
    static Profile sample(const Grid& grid, F&& f) {
        std::vector<double> v(grid.n_points);
        for (std::size_t j = 0; j < grid.n_points; ++j) v[j] = f(grid.x(j));
        return make(grid, std::move(v));
    }

    std::size_t size() const { return values.size(); }
};

}  // namespace fracwave

#endif
