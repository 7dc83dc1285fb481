/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_SPECTRAL_HPP
#define FRACWAVE_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/fft.hpp"
#include "fracwave/grid.hpp"
#include "fracwave/params.hpp"

// Periodic Fourier-multiplier operators on grid profiles, the pointwise
// nonlinearity, equation residuals and the Gagliardo-Nirenberg quotient.

namespace fracwave::spectral {

namespace detail {

inline std::vector<std::complex<double>> to_spectrum(const Profile& u) {
    std::vector<std::complex<double>> a(u.values.begin(), u.values.end());
    fracwave::detail::Fft::forward(a);
    return a;
}

inline std::vector<double> to_samples(std::vector<std::complex<double>> a) {
    fracwave::detail::Fft::inverse(a);
    std::vector<double> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j].real();
    return out;
}

inline void check_finite(const Profile& u) {
    for (double v : u.values)
        if (!std::isfinite(v)) throw DataError("profile contains non-finite samples");
}

// Apply g(bin index) in place on the spectrum.
template <class G>
Profile apply_multiplier(const Profile& u, G&& g) {
    check_finite(u);
    auto a = to_spectrum(u);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= g(j);
    return Profile::make(u.grid, to_samples(std::move(a)));
}

}  // namespace detail

inline double trapezoid(const Profile& u) {
    double s = 0.0;
    for (double v : u.values) s += v;
    return s * u.grid.spacing();
}

template <class F>
double trapezoid_weighted(const Profile& u, F&& w) {
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += w(u.grid.x(j)) * u.values[j];
    return s * u.grid.spacing();
}

inline double inner_product(const Profile& u, const Profile& v) {
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += u.values[j] * v.values[j];
    return s * u.grid.spacing();
}

inline double max_abs(const Profile& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

// |D|^alpha: multiply by |xi_m|^alpha in frequency space.
inline Profile apply_riesz(const Profile& u, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("apply_riesz: alpha in (0,2]");
    return detail::apply_multiplier(u, [&](std::size_t j) {
        double xi = u.grid.frequency(j);
        return std::complex<double>(std::pow(std::abs(xi), alpha), 0.0);
    });
}

// Resolvent (1+|D|^alpha)^{-1}; the periodic convolution with k.
inline Profile apply_resolvent(const Profile& u, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("apply_resolvent: alpha in (0,2]");
    return detail::apply_multiplier(u, [&](std::size_t j) {
        double xi = u.grid.frequency(j);
        return std::complex<double>(1.0 / (1.0 + std::pow(std::abs(xi), alpha)), 0.0);
    });
}

// Spectral d^j/dx^j. The Nyquist mode is zeroed for odd orders.
inline Profile fourier_derivative(const Profile& u, int order) {
    if (order < 0) throw std::domain_error("fourier_derivative: order must be >= 0");
    const std::size_t nyquist = u.grid.n_points / 2;
    return detail::apply_multiplier(u, [&](std::size_t j) {
        if (order % 2 == 1 && j == nyquist) return std::complex<double>(0.0, 0.0);
        std::complex<double> ixi(0.0, u.grid.frequency(j));
        return std::pow(ixi, order);
    });
}

// Shift samples so that u_new(x) = u(x + delta); used for sub-grid centering.
inline Profile fourier_shift(const Profile& u, double delta) {
    return detail::apply_multiplier(u, [&](std::size_t j) {
        return std::exp(std::complex<double>(0.0, u.grid.frequency(j) * delta));
    });
}

inline double nonlinearity_scalar(double v, const ProblemParams& params) {
    if (params.kind == Nonlinearity::integer_power) {
        int p = static_cast<int>(std::lround(params.p));
        double r = 1.0;
        for (int i = 0; i < p; ++i) r *= v;
        return r;
    }
    if (v == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(v), params.p), v);
}

inline Profile nonlinearity(const Profile& u, const ProblemParams& params) {
    std::vector<double> out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = nonlinearity_scalar(u.values[j], params);
    return Profile::make(u.grid, std::move(out));
}

// Pointwise residual |D|^alpha u + u - f(u) and its max norm.
inline std::pair<Profile, double> residual(const Profile& u, const ProblemParams& params) {
    Profile r = apply_riesz(u, params.alpha);
    Profile fu = nonlinearity(u, params);
    for (std::size_t j = 0; j < u.size(); ++j) r.values[j] += u.values[j] - fu.values[j];
    return {r, max_abs(r)};
}

// Gagliardo-Nirenberg quotient. The kinetic and mass exponents make the
// quotient invariant under both dilation and amplitude scaling.
inline double functional_J(const Profile& u, const ProblemParams& params) {
    const double alpha = params.alpha;
    const double p = params.p;
    Profile du = apply_riesz(u, alpha);
    double kinetic = inner_product(u, du);  // = int | |D|^{a/2} u |^2
    double mass = inner_product(u, u);
    double denom = 0.0;
    for (double v : u.values) denom += std::pow(std::abs(v), p + 1.0);
    denom *= u.grid.spacing();
    if (!(mass > 0.0) || !(denom > 0.0))
        throw std::domain_error("functional_J: degenerate profile");
    double ek = (p - 1.0) / (2.0 * alpha);
    double em = ek * (alpha - 1.0) + 1.0;
    return std::pow(kinetic, ek) * std::pow(mass, em) / denom;
}

}  // namespace fracwave::spectral

#endif
