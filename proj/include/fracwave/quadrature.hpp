/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_QUADRATURE_HPP
#define FRACWAVE_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracwave/errors.hpp"

namespace fracwave::quad {

struct Estimate {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

template <class F>
Estimate integrate_adaptive(F&& f, double a, double b, double rel_tol) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        std::forward<F>(f), a, b, 15, rel_tol, &err);
    return {v, err};
}

// Endpoint-singularity tolerant integration on [a,b].
template <class F>
Estimate integrate_tanh_sinh(F&& f, double a, double b, double rel_tol) {
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0, l1 = 0.0;
    double v = ts.integrate(std::forward<F>(f), a, b, rel_tol, &err, &l1);
    return {v, err * std::max(l1, std::abs(v))};
}

template <class F>
double gauss21(F&& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 21>::integrate(std::forward<F>(f), a, b);
}

// Wynn epsilon extrapolation of a sequence of partial sums. Degenerate
// differences poison their table entries (propagated as inf) instead of
// producing spurious huge values, and even-column candidates are only
// admitted inside the range spanned by the partial sums themselves -- for an
// alternating tail the limit is bracketed by consecutive sums. The error
// estimate is the spread of the last three admitted candidates.
inline Estimate epsilon_extrapolate(const std::vector<double>& sums) {
    const std::size_t n = sums.size();
    if (n < 4) return {n ? sums.back() : 0.0, HUGE_VAL};
    double lo = sums[0], hi = sums[0];
    for (double s : sums) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    const double span = hi - lo;
    std::vector<double> prev(n + 1, 0.0);  // eps_{-1} column
    std::vector<double> cur(sums);         // eps_0 column
    std::vector<double> cand;
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(n - k);
        for (std::size_t j = 0; j + k < n; ++j) {
            double d = cur[j + 1] - cur[j];
            next[j] = (d == 0.0 || !std::isfinite(d)) ? HUGE_VAL : prev[j + 1] + 1.0 / d;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0 && !cur.empty()) {
            double v = cur.back();
            if (std::isfinite(v) && v >= lo - span && v <= hi + span) cand.push_back(v);
        }
    }
    if (cand.size() < 3) return {sums.back(), HUGE_VAL};
    double c1 = cand[cand.size() - 1];
    double c2 = cand[cand.size() - 2];
    double c3 = cand[cand.size() - 3];
    return {c1, std::abs(c1 - c2) + std::abs(c2 - c3)};
}

enum class Oscillation { cosine, sine };

// int_0^inf f(t) * cos(omega t) dt  (or sin). The amplitude f is assumed
// smooth away from t=0 and decaying. Strategy: tanh_sinh up to the first
// zero of the trigonometric factor (absorbs endpoint kinks of f), fixed
// Gauss rules on the following half-periods, epsilon acceleration of the
// alternating partial sums.
template <class F>
Estimate oscillatory_integral(F&& f, double omega, Oscillation osc, double rel_tol,
                              double cutoff = HUGE_VAL, std::size_t max_segments = 4000) {
    const double pi = 3.14159265358979323846;
    auto g = [&](double t) {
        return f(t) * (osc == Oscillation::cosine ? std::cos(omega * t) : std::sin(omega * t));
    };
    auto zero = [&](std::size_t j) {
        return (osc == Oscillation::cosine ? (static_cast<double>(j) + 0.5)
                                           : (static_cast<double>(j) + 1.0)) *
               pi / omega;
    };
    Estimate head = integrate_tanh_sinh(g, 0.0, std::min(zero(0), cutoff), rel_tol);
    if (zero(0) >= cutoff) return head;  // amplitude dead before the first sign flip
    double sum = head.value;
    std::vector<double> partial;
    partial.reserve(64);
    partial.push_back(sum);
    double z_prev = zero(0);
    int tiny_streak = 0;
    Estimate best{sum, HUGE_VAL};
    for (std::size_t j = 1; j < max_segments; ++j) {
        double z = std::min(zero(j), cutoff);
        double seg = gauss21(g, z_prev, z);
        z_prev = z;
        sum += seg;
        partial.push_back(sum);
        double scale = std::max(std::abs(sum), 1e-300);
        if (z >= cutoff) return {sum, std::abs(seg) + head.error};
        if (std::abs(seg) < 0.5 * rel_tol * scale) {
            if (++tiny_streak >= 2) return {sum, std::abs(seg) + head.error};
        } else {
            tiny_streak = 0;
        }
        if (partial.size() >= 10 && partial.size() % 2 == 0) {
            std::size_t take = std::min<std::size_t>(partial.size(), 40);
            std::vector<double> tail(partial.end() - take, partial.end());
            Estimate acc = epsilon_extrapolate(tail);
            // an alternating tail keeps the limit within one segment of the sum
            bool plausible = std::abs(acc.value - sum) <= 3.0 * std::abs(seg) + head.error;
            if (plausible && acc.error < best.error) best = acc;
            if (plausible &&
                acc.error <= 0.3 * rel_tol * std::max(std::abs(acc.value), 1e-300))
                return {acc.value, acc.error + head.error};
        }
    }
    double achieved = best.error / std::max(std::abs(best.value), 1e-300);
    if (achieved <= 50 * rel_tol) return best;  // close enough to be useful
    throw AccuracyError("oscillatory_integral: series acceleration stalled", achieved);
}

}  // namespace fracwave::quad

#endif
