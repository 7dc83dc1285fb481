/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_KERNEL_HPP
#define FRACWAVE_KERNEL_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/params.hpp"
#include "fracwave/quadrature.hpp"

// Evaluation of the resolvent kernel k = F^{-1}[(1+|xi|^alpha)^{-1}], its
// derivative, and the auxiliary damped-cosine transform
//     h(y) = int_0^inf cos(y eta) exp(-eta^alpha) d eta,
// which represents k through
//     k(x) = (1/pi) int_0^inf e^{-s} s^{-1/alpha} h(x / s^{1/alpha}) ds.
// Near the origin these are computed by quadrature; at large argument by the
// asymptotic series whose coefficients extend the two published ones.

namespace fracwave::specfun {

inline constexpr double pi = 3.14159265358979323846;

struct EvalOptions {
    double quad_rel_tol = 1e-10;
    double crossover_x = 8.0;  // quadrature/series switch for k; h uses max(10, crossover_x)
    int series_terms = 2;      // truncation order for tabulated series output

    void validate() const {
        if (!(quad_rel_tol > 0.0)) throw std::domain_error("EvalOptions: quad_rel_tol must be > 0");
        if (!(crossover_x > 1.0)) throw std::domain_error("EvalOptions: crossover_x must be > 1");
        if (series_terms < 1) throw std::domain_error("EvalOptions: series_terms must be >= 1");
    }
};

namespace detail {

inline void check_alpha_open(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::domain_error("alpha must lie in (0,2)");
}

inline void check_alpha_closed(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::domain_error("alpha must lie in (0,2]");
}

// Magnitude of the n-th large-argument series term of h, |sin| bounded by 1:
// Gamma(n*alpha+1)/n! * y^{-(n*alpha+1)}, computed in log space.
inline double h_term_envelope(int n, double alpha, double log_y) {
    double la = std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0) - (n * alpha + 1.0) * log_y;
    return std::exp(la);
}

}  // namespace detail

// k_n of the kernel expansion k ~ sum k_n |x|^{-(n alpha + 1)}. Orders one
// and two are the published closed forms; higher orders follow the same
// contour pattern and are validated against quadrature before use.
inline double kernel_coefficient(int n, double alpha) {
    if (n < 1) throw std::domain_error("kernel_coefficient: n must be >= 1");
    detail::check_alpha_closed(alpha);
    double g_arg = n * alpha + 1.0;
    if (g_arg > 170.0)
        throw std::domain_error("kernel_coefficient: Gamma(n*alpha+1) overflows double");
    double sign = (n % 2 == 0) ? -1.0 : 1.0;
    return sign * std::sin(n * pi * alpha / 2.0) * std::tgamma(g_arg) / pi;
}

// Orders beyond the two published ones are extrapolated from the pattern.
inline bool kernel_coefficient_extrapolated(int n) { return n >= 3; }

struct KernelSeries {
    double alpha = 1.0;
    std::vector<double> coeffs;  // coeffs[i] = k_{i+1}
    int n_terms = 0;

    static KernelSeries make(double alpha, int n_terms) {
        detail::check_alpha_closed(alpha);
        if (n_terms < 1) throw std::domain_error("KernelSeries: n_terms must be >= 1");
        KernelSeries s;
        s.alpha = alpha;
        s.n_terms = n_terms;
        s.coeffs.reserve(n_terms);
        for (int n = 1; n <= n_terms; ++n) s.coeffs.push_back(kernel_coefficient(n, alpha));
        return s;
    }

    // First-omitted-term bound ~ C |x|^{-((N+1) alpha + 1)}.
    double truncation_estimate(double x) const {
        double g_arg = (n_terms + 1) * alpha + 1.0;
        if (g_arg > 170.0) return HUGE_VAL;
        return std::tgamma(g_arg) / pi * std::pow(std::abs(x), -g_arg);
    }
};

inline double k_series_eval(double x, const KernelSeries& series) {
    double ax = std::abs(x);
    if (!(ax > 1.0)) throw std::domain_error("k_series_eval: requires |x| > 1");
    double s = 0.0;
    for (int n = series.n_terms; n >= 1; --n)
        s += series.coeffs[n - 1] * std::pow(ax, -(n * series.alpha + 1.0));
    return s;
}

namespace detail {

// Large-argument series of h with optimal truncation; returns the achieved
// absolute error estimate (first omitted/offending envelope term).
inline quad::Estimate h_series(double y, double alpha, double rel_tol, int max_terms = 64) {
    double log_y = std::log(y);
    double sum = 0.0;
    double prev_mag = HUGE_VAL;
    for (int n = 1; n <= max_terms; ++n) {
        if (n * alpha + 1.0 > 170.0) return {sum, prev_mag};
        double mag = h_term_envelope(n, alpha, log_y);
        if (mag > prev_mag) return {sum, prev_mag};  // asymptotic growth: stop at the valley
        double sign = (n % 2 == 0) ? -1.0 : 1.0;
        sum += sign * std::sin(n * pi * alpha / 2.0) * mag;
        prev_mag = mag;
        if (mag <= rel_tol * std::max(std::abs(sum), 1e-300)) return {sum, mag};
    }
    return {sum, prev_mag};
}

// Termwise-differentiated series for h'.
inline quad::Estimate h_prime_series(double y, double alpha, double rel_tol, int max_terms = 64) {
    double log_y = std::log(y);
    double sum = 0.0;
    double prev_mag = HUGE_VAL;
    for (int n = 1; n <= max_terms; ++n) {
        if (n * alpha + 1.0 > 170.0) return {sum, prev_mag};
        double mag = h_term_envelope(n, alpha, log_y) * (n * alpha + 1.0) / y;
        if (mag > prev_mag) return {sum, prev_mag};
        double sign = (n % 2 == 0) ? 1.0 : -1.0;  // extra -1 from d/dy y^{-(n a + 1)}
        sum += sign * std::sin(n * pi * alpha / 2.0) * mag;
        prev_mag = mag;
        if (mag <= rel_tol * std::max(std::abs(sum), 1e-300)) return {sum, mag};
    }
    return {sum, prev_mag};
}

inline double eta_support(double alpha) {
    // exp(-eta^alpha) below 1e-18 beyond this point
    return std::pow(41.5, 1.0 / alpha);
}

inline quad::Estimate h_quadrature(double y, double alpha, double rel_tol) {
    double cutoff = eta_support(alpha);
    auto amp = [alpha](double eta) { return std::exp(-std::pow(eta, alpha)); };
    return quad::oscillatory_integral(amp, y, quad::Oscillation::cosine, rel_tol, cutoff);
}

inline quad::Estimate h_prime_quadrature(double y, double alpha, double rel_tol) {
    double cutoff = eta_support(alpha);
    auto amp = [alpha](double eta) { return -eta * std::exp(-std::pow(eta, alpha)); };
    return quad::oscillatory_integral(amp, y, quad::Oscillation::sine, rel_tol, cutoff);
}

}  // namespace detail

// h(y) for alpha in (0,2]; alpha = 2 is the Gaussian boundary used as an
// oracle. Even in y.
inline double h_eval(double y, double alpha, const EvalOptions& opts = {}) {
    detail::check_alpha_closed(alpha);
    opts.validate();
    double ay = std::abs(y);
    if (ay == 0.0) return std::tgamma(1.0 + 1.0 / alpha);
    double hx = std::max(10.0, opts.crossover_x);
    if (ay > hx) {
        quad::Estimate s = detail::h_series(ay, alpha, opts.quad_rel_tol);
        if (s.error <= opts.quad_rel_tol * std::max(std::abs(s.value), 1e-300)) return s.value;
        // series not accurate enough at this y/alpha: fall through to quadrature
    }
    quad::Estimate q = detail::h_quadrature(ay, alpha, opts.quad_rel_tol);
    return q.value;
}

inline double h_prime_eval(double y, double alpha, const EvalOptions& opts = {}) {
    detail::check_alpha_closed(alpha);
    opts.validate();
    if (y == 0.0) return 0.0;
    double ay = std::abs(y);
    double hx = std::max(10.0, opts.crossover_x);
    double v;
    if (ay > hx) {
        quad::Estimate s = detail::h_prime_series(ay, alpha, opts.quad_rel_tol);
        if (s.error <= opts.quad_rel_tol * std::max(std::abs(s.value), 1e-300)) {
            v = s.value;
            return y > 0 ? v : -v;
        }
    }
    v = detail::h_prime_quadrature(ay, alpha, opts.quad_rel_tol).value;
    return y > 0 ? v : -v;  // h even, h' odd
}

// Rotated-contour representation of h: the integration path is tilted to
// angle pi*alpha/4 where the integrand decays monotonically, giving an
// independent evaluation route. Valid for y > 0.
inline double h_eval_rotated(double y, double alpha, const EvalOptions& opts = {}) {
    detail::check_alpha_closed(alpha);
    opts.validate();
    if (!(y > 0.0)) throw std::domain_error("h_eval_rotated: requires y > 0");
    const double c = std::cos(pi * alpha / 4.0);
    const double s = std::sin(pi * alpha / 4.0);
    const double ya = std::pow(y, alpha);
    const double r2 = std::sqrt(2.0) / 2.0;
    // substitute t = r^{1/alpha}; dr = alpha t^{alpha-1} dt
    auto g = [=](double t) {
        double r = std::pow(t, alpha);
        double amplitude = std::exp(-r2 * t - r * c / ya);
        double phase = r2 * t - r * s / ya + pi * alpha / 4.0;
        return amplitude * std::sin(phase) * alpha * std::pow(t, alpha - 1.0);
    };
    quad::Estimate e = quad::integrate_tanh_sinh(g, 0.0, 62.0, opts.quad_rel_tol);
    return e.value / std::pow(y, 1.0 + alpha);
}

namespace detail {

// Claim-2.2 route: outer exponential integral over the h profile.
inline double k_quadrature(double x, double alpha, double rel_tol) {
    double ax = std::abs(x);
    EvalOptions inner;
    inner.quad_rel_tol = std::max(rel_tol * 0.05, 1e-13);
    const double s_top = 45.0;
    const double pk1 = std::sin(pi * alpha / 2.0) * std::tgamma(alpha + 1.0);  // = pi k_1
    auto f = [&](double s) {
        if (s <= 0.0) return 0.0;
        double sp = std::pow(s, 1.0 / alpha);
        double arg = ax / sp;
        if (!std::isfinite(arg) || arg > 1e12) {
            // leading behaviour h ~ pi k_1 / arg^{a+1}; the whole integrand ~ s.
            // Log form keeps x^{-(a+1)} representable for extreme x.
            double le = -s + std::log(s) + std::log(pk1) - (alpha + 1.0) * std::log(ax);
            return le > 690.0 ? 0.0 : std::exp(le);
        }
        return std::exp(-s) * h_eval(arg, alpha, inner) / sp;
    };
    double s_mid = std::pow(ax, alpha);
    quad::Estimate left{0.0, 0.0}, right{0.0, 0.0};
    if (s_mid <= 1e-8 || s_mid >= s_top) {
        right = quad::integrate_tanh_sinh(f, 0.0, s_top, rel_tol);
    } else {
        left = quad::integrate_tanh_sinh(f, 0.0, s_mid, rel_tol);
        right = quad::integrate_tanh_sinh(f, s_mid, s_top, rel_tol);
    }
    return (left.value + right.value) / pi;
}

inline double k_prime_quadrature(double x, double alpha, double rel_tol) {
    double ax = std::abs(x);
    EvalOptions inner;
    inner.quad_rel_tol = std::max(rel_tol * 0.05, 1e-13);
    const double s_top = 45.0;
    const double pk1 = std::sin(pi * alpha / 2.0) * std::tgamma(alpha + 1.0);
    auto f = [&](double s) {
        if (s <= 0.0) return 0.0;
        double sp = std::pow(s, 1.0 / alpha);
        double arg = ax / sp;
        if (!std::isfinite(arg) || arg > 1e12) {
            // h' ~ -(a+1) pi k_1 / arg^{a+2}; the whole integrand ~ s
            double le = -s + std::log(s) + std::log((alpha + 1.0) * pk1) -
                        (alpha + 2.0) * std::log(ax);
            return le > 690.0 ? 0.0 : -std::exp(le);
        }
        return std::exp(-s) * h_prime_eval(arg, alpha, inner) / (sp * sp);
    };
    double s_mid = std::pow(ax, alpha);
    quad::Estimate left{0.0, 0.0}, right{0.0, 0.0};
    if (s_mid <= 1e-8 || s_mid >= s_top) {
        right = quad::integrate_tanh_sinh(f, 0.0, s_top, rel_tol);
    } else {
        left = quad::integrate_tanh_sinh(f, 0.0, s_mid, rel_tol);
        right = quad::integrate_tanh_sinh(f, s_mid, s_top, rel_tol);
    }
    double v = (left.value + right.value) / pi;
    return x > 0 ? v : -v;
}

// Optimal-truncation evaluation of the kernel series at large |x|.
inline quad::Estimate k_series_adaptive(double x, double alpha, double rel_tol,
                                        int max_terms = 48) {
    double ax = std::abs(x);
    double log_x = std::log(ax);
    double sum = 0.0;
    double prev_mag = HUGE_VAL;
    for (int n = 1; n <= max_terms; ++n) {
        double g_arg = n * alpha + 1.0;
        if (g_arg > 170.0) return {sum, prev_mag};
        double mag = std::exp(std::lgamma(g_arg) - g_arg * log_x) / pi;
        if (mag > prev_mag) return {sum, prev_mag};
        double sign = (n % 2 == 0) ? -1.0 : 1.0;
        sum += sign * std::sin(n * pi * alpha / 2.0) * mag;
        prev_mag = mag;
        if (mag <= rel_tol * std::max(std::abs(sum), 1e-300)) return {sum, mag};
    }
    return {sum, prev_mag};
}

inline quad::Estimate k_prime_series_adaptive(double x, double alpha, double rel_tol,
                                              int max_terms = 48) {
    double ax = std::abs(x);
    double log_x = std::log(ax);
    double sum = 0.0;
    double prev_mag = HUGE_VAL;
    for (int n = 1; n <= max_terms; ++n) {
        double g_arg = n * alpha + 1.0;
        if (g_arg > 170.0) return {sum, prev_mag};
        double mag = (g_arg / ax) * std::exp(std::lgamma(g_arg) - g_arg * log_x) / pi;
        if (mag > prev_mag) return {sum, prev_mag};
        double sign = (n % 2 == 0) ? 1.0 : -1.0;  // -sign(x) sum (n a + 1) k_n |x|^{-(n a + 2)}
        sum += sign * std::sin(n * pi * alpha / 2.0) * mag;
        prev_mag = mag;
        if (mag <= rel_tol * std::max(std::abs(sum), 1e-300)) return {sum, mag};
    }
    return {sum, prev_mag};
}

}  // namespace detail

// Resolvent kernel k(x). Quadrature of the Claim-2.2 representation below the
// crossover, asymptotic series above it. For alpha <= 1 the kernel blows up
// at the origin.
inline double k_eval(double x, double alpha, const EvalOptions& opts = {}) {
    detail::check_alpha_open(alpha);
    opts.validate();
    double ax = std::abs(x);
    if (ax == 0.0 && alpha <= 1.0)
        throw std::domain_error("k_eval: kernel is singular at x = 0 for alpha <= 1");
    if (ax > opts.crossover_x) {
        quad::Estimate s = detail::k_series_adaptive(ax, alpha, opts.quad_rel_tol);
        if (s.error <= opts.quad_rel_tol * std::max(std::abs(s.value), 1e-300)) return s.value;
    }
    return detail::k_quadrature(ax, alpha, opts.quad_rel_tol);
}

// k'(x) for alpha in (1,2); matches -sign(x) * sum (n a + 1) k_n |x|^{-(n a + 2)}
// at large |x| (the sign is forced by k positive and decreasing).
inline double k_prime_eval(double x, double alpha, const EvalOptions& opts = {}) {
    if (!(alpha > 1.0) || !(alpha < 2.0))
        throw UnsupportedError("k_prime_eval: supported for alpha in (1,2) only");
    opts.validate();
    if (x == 0.0) throw std::domain_error("k_prime_eval: x must be nonzero");
    double ax = std::abs(x);
    if (ax > opts.crossover_x) {
        quad::Estimate s = detail::k_prime_series_adaptive(ax, alpha, opts.quad_rel_tol);
        if (s.error <= opts.quad_rel_tol * std::max(std::abs(s.value), 1e-300))
            return x > 0 ? s.value : -s.value;
    }
    return detail::k_prime_quadrature(x, alpha, opts.quad_rel_tol);
}

// int_R k dx: composite quadrature over [-X, X] plus the analytic series tail
// 2 sum_n k_n / (n alpha X^{n alpha}), truncated at its smallest term. The
// symbol value at xi = 0 makes the exact answer 1.
inline double kernel_mass(double alpha, const EvalOptions& opts = {}, double X = 100.0) {
    detail::check_alpha_open(alpha);
    opts.validate();
    double tol = std::min(opts.quad_rel_tol, 1e-9);
    auto f = [&](double x) { return k_eval(x, alpha, opts); };
    // the omitted sliver below 1e-30 carries O(1e-13) mass even at alpha = 0.3
    quad::Estimate inner = quad::integrate_tanh_sinh(f, 1e-30, 1.0, tol);
    quad::Estimate outer = quad::integrate_adaptive(f, 1.0, X, tol);
    double tail = 0.0;
    double prev_mag = HUGE_VAL;
    for (int n = 1; n <= 48; ++n) {
        double g_arg = n * alpha + 1.0;
        if (g_arg > 170.0) break;
        double mag = std::exp(std::lgamma(g_arg) - n * alpha * std::log(X)) / (pi * n * alpha);
        if (mag > prev_mag) break;
        double sign = (n % 2 == 0) ? -1.0 : 1.0;
        tail += sign * std::sin(n * pi * alpha / 2.0) * mag;
        prev_mag = mag;
        if (mag < 1e-12) break;
    }
    return 2.0 * (inner.value + outer.value + tail);
}

}  // namespace fracwave::specfun

#endif
