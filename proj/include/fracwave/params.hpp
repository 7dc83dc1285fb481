/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_PARAMS_HPP
#define FRACWAVE_PARAMS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracwave {

enum class Nonlinearity { signed_power, integer_power };

inline const char* to_string(Nonlinearity k) {
    return k == Nonlinearity::signed_power ? "signed_power" : "integer_power";
}

inline Nonlinearity nonlinearity_from_string(const std::string& s) {
    if (s == "signed_power") return Nonlinearity::signed_power;
    if (s == "integer_power") return Nonlinearity::integer_power;
    throw std::invalid_argument("unknown nonlinearity kind: " + s);
}

// Subcriticality threshold p*(alpha): finite only below alpha = 1.
inline double critical_exponent(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::domain_error("critical_exponent: alpha must lie in (0,2)");
    if (alpha >= 1.0) return std::numeric_limits<double>::infinity();
    return 2.0 * alpha / (1.0 - alpha) + 1.0;
}

// Dispersion order, nonlinearity exponent and the choice f(u)=|u|^{p-1}u
// versus f(u)=u^p with integer p.
struct ProblemParams {
    double alpha = 1.0;
    double p = 2.0;
    Nonlinearity kind = Nonlinearity::integer_power;

    static ProblemParams make(double alpha, double p, Nonlinearity kind) {
        if (!(alpha > 0.0) || !(alpha < 2.0))
            throw std::domain_error("ProblemParams: alpha must lie in (0,2)");
        return checked(alpha, p, kind);
    }

    // Permits alpha = 2 so the classical soliton can serve as a boundary check.
    static ProblemParams boundary(double alpha, double p, Nonlinearity kind) {
        if (!(alpha > 0.0) || !(alpha <= 2.0))
            throw std::domain_error("ProblemParams: alpha must lie in (0,2]");
        return checked(alpha, p, kind);
    }

  private:
    static ProblemParams checked(double alpha, double p, Nonlinearity kind) {
        if (!(p > 1.0))
            throw std::domain_error("ProblemParams: p must exceed 1");
        if (alpha < 1.0 && !(p < critical_exponent(alpha)))
            throw std::domain_error("ProblemParams: p >= p*(alpha), supercritical");
        if (kind == Nonlinearity::integer_power) {
            if (std::abs(p - std::round(p)) > 1e-12 || p < 2.0)
                throw std::domain_error("ProblemParams: integer_power requires integer p >= 2");
        }
        ProblemParams out;
        out.alpha = alpha;
        out.p = p;
        out.kind = kind;
        return out;
    }
};

}  // namespace fracwave

#endif
