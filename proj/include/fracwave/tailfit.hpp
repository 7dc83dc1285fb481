/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_TAILFIT_HPP
#define FRACWAVE_TAILFIT_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/grid.hpp"

// Power-law tail fitting on periodic grids. A term c/x^e of a line profile
// appears on the circle together with its images c/(2Lm - x)^e, c/(2Lm + x)^e;
// truncating the image sum leaves a near-constant floor of size ~ L^{-e}, so
// the bases below sum the images explicitly.

namespace fracwave::tailfit {

struct FitWindow {
    double x_lo = 0.0;
    double x_hi = 0.0;
};

// sum over the periodic images of x^{-e}, optionally with a log factor.
// parity is the sign carried by reflected images ((-1)^j for j-th
// derivatives of even profiles).
inline double periodic_power_term(double x, double exponent, double period_half, double parity,
                                  bool with_log) {
    const double L = period_half;
    auto term = [&](double v) {
        double t = std::pow(v, -exponent);
        return with_log ? t * std::log(v) : t;
    };
    double s = term(x);
    const int m_max = 60;
    for (int m = 1; m <= m_max; ++m)
        s += term(2.0 * L * m + x) + parity * term(2.0 * L * m - x);
    // integral tail of the image sum beyond m_max
    double a = 2.0 * L * (m_max + 0.5);
    double tail = (1.0 + parity) * std::pow(a, 1.0 - exponent) / ((exponent - 1.0) * 2.0 * L);
    if (with_log) tail *= std::log(a);
    return s + tail;
}

struct BasisTerm {
    double exponent = 0.0;
    double parity = 1.0;
    bool with_log = false;
};

inline std::vector<double> basis_column(const std::vector<double>& xs, const BasisTerm& t,
                                        double period_half) {
    std::vector<double> col(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        col[i] = periodic_power_term(xs[i], t.exponent, period_half, t.parity, t.with_log);
    return col;
}

namespace detail {

// Gaussian elimination with partial pivoting; systems here are at most 5x5.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        if (a[c][c] == 0.0) throw FitDomainError("singular least-squares system");
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace detail

// Least squares of y against the given basis terms, weighted relative to the
// first (leading) column so every window point counts equally.
inline std::vector<double> fit_fixed_exponents(const std::vector<double>& xs,
                                               const std::vector<double>& ys,
                                               const std::vector<BasisTerm>& terms,
                                               double period_half) {
    if (terms.empty() || xs.size() != ys.size() || xs.size() < terms.size())
        throw FitDomainError("fit_fixed_exponents: bad inputs");
    const std::size_t k = terms.size();
    std::vector<std::vector<double>> cols(k);
    for (std::size_t j = 0; j < k; ++j) cols[j] = basis_column(xs, terms[j], period_half);
    // regress y/lead on cols/lead
    std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
    std::vector<double> atb(k, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double lead = cols[0][i];
        if (lead == 0.0) continue;
        double yi = ys[i] / lead;
        for (std::size_t a = 0; a < k; ++a) {
            double ca = cols[a][i] / lead;
            atb[a] += ca * yi;
            for (std::size_t b = 0; b <= a; ++b) ata[a][b] += ca * cols[b][i] / lead;
        }
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) ata[a][b] = ata[b][a];
    return detail::solve_dense(std::move(ata), std::move(atb));
}

struct FreeFit {
    double exponent = 0.0;     // decay order: y ~ coefficient * x^{-exponent}
    double coefficient = 0.0;  // |coefficient| from the log-log intercept
    double r2 = 0.0;
    std::size_t n_points = 0;
};

// Log-log linear regression of |y| on x.
inline FreeFit fit_free_exponent(const std::vector<double>& xs, const std::vector<double>& ys,
                                 double abs_floor = 0.0) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(ys[i]) <= abs_floor) continue;
        double lx = std::log(xs[i]);
        double ly = std::log(std::abs(ys[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly; syy += ly * ly;
        ++n;
    }
    if (n < 8) throw FitDomainError("fit_free_exponent: too few usable points");
    double nn = static_cast<double>(n);
    double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    double intercept = (sy - slope * sx) / nn;
    double sse = 0.0, sst = 0.0;
    double ybar = sy / nn;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(ys[i]) <= abs_floor) continue;
        double lx = std::log(xs[i]);
        double ly = std::log(std::abs(ys[i]));
        double e = ly - (slope * lx + intercept);
        sse += e * e;
        sst += (ly - ybar) * (ly - ybar);
    }
    FreeFit f;
    f.exponent = -slope;
    f.coefficient = std::exp(intercept);
    f.r2 = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    f.n_points = n;
    return f;
}

struct TailFitResult {
    double exponent = 0.0;
    double coefficient = 0.0;
    double r2 = 1.0;
    bool poor_fit = false;  // free fits with r2 < 0.99
    FitWindow window;
    std::size_t n_points = 0;
};

// The window samples of a profile restricted to [x_lo, x_hi] on the positive
// half-axis.
inline std::pair<std::vector<double>, std::vector<double>> window_samples(const Profile& q,
                                                                          const FitWindow& w) {
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < q.size(); ++j) {
        double x = q.grid.x(j);
        if (x >= w.x_lo && x <= w.x_hi) {
            xs.push_back(x);
            ys.push_back(q.values[j]);
        }
    }
    return {std::move(xs), std::move(ys)};
}

// Spec surface: free fit of slope and intercept, or fixed-exponent fit of the
// coefficient alone (with periodic images). The window must contain at least
// 32 one-signed samples inside (0, 0.8 L).
inline TailFitResult fit_tail(const Profile& q, const FitWindow& window,
                              std::optional<double> model_exponent = std::nullopt) {
    const double L = q.grid.half_length;
    if (!(window.x_lo > 0.0) || !(window.x_hi > window.x_lo) || window.x_hi > 0.8 * L)
        throw FitDomainError("fit_tail: window must lie inside (0, 0.8 L)");
    auto [xs, ys] = window_samples(q, window);
    if (xs.size() < 32) throw FitDomainError("fit_tail: fewer than 32 points in window");
    bool pos = ys.front() > 0.0;
    for (double y : ys)
        if ((y > 0.0) != pos || y == 0.0)
            throw FitDomainError("fit_tail: profile changes sign inside window");
    TailFitResult out;
    out.window = window;
    out.n_points = xs.size();
    if (model_exponent) {
        auto c = fit_fixed_exponents(xs, ys, {{*model_exponent, 1.0, false}}, L);
        out.exponent = *model_exponent;
        out.coefficient = c[0];
        return out;
    }
    FreeFit f = fit_free_exponent(xs, ys);
    out.exponent = f.exponent;
    out.coefficient = pos ? f.coefficient : -f.coefficient;
    out.r2 = f.r2;
    out.poor_fit = f.r2 < 0.99;
    return out;
}

}  // namespace fracwave::tailfit

#endif
