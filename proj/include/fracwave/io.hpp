/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_IO_HPP
#define FRACWAVE_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracwave/asymptotics.hpp"
#include "fracwave/grid.hpp"
#include "fracwave/groundstate.hpp"
#include "fracwave/params.hpp"

// Serialization: CSV with '.' decimals and at least 12 significant digits,
// JSON envelopes with snake_case keys matching the type definitions.

namespace fracwave::io {

using nlohmann::json;

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline json to_json(const ProblemParams& p) {
    return json{{"alpha", p.alpha}, {"p", p.p}, {"kind", to_string(p.kind)}};
}

inline json profile_envelope(const Profile& q, const ProblemParams& params) {
    json j = to_json(params);
    j["L"] = q.grid.half_length;
    j["N"] = q.grid.n_points;
    j["values"] = q.values;
    return j;
}

inline std::pair<Profile, ProblemParams> profile_from_envelope(const json& j,
                                                               bool boundary_ok = false) {
    double alpha = j.at("alpha").get<double>();
    double p = j.at("p").get<double>();
    Nonlinearity kind = nonlinearity_from_string(j.at("kind").get<std::string>());
    ProblemParams params = boundary_ok ? ProblemParams::boundary(alpha, p, kind)
                                       : ProblemParams::make(alpha, p, kind);
    Grid g = Grid::make(j.at("L").get<double>(), j.at("N").get<std::size_t>());
    Profile q = Profile::make(g, j.at("values").get<std::vector<double>>());
    return {std::move(q), params};
}

inline json to_json(const groundstate::ConvergenceReport& r) {
    return json{{"iterations", r.iterations},
                {"final_residual", r.final_residual},
                {"final_m", r.final_m},
                {"residual_history", r.residual_history}};
}

inline json to_json(const asymptotics::TailCoefficients& c) {
    return json{{"a1", c.a1},
                {"a2", c.a2},
                {"a3", c.a3},
                {"a1_tilde", c.a1_tilde},
                {"integral_fQ", c.integral_fQ},
                {"integral_x2fQ", c.integral_x2fQ},
                {"integral_k", c.integral_k},
                {"tail_correction_fQ", c.tail_correction_fQ},
                {"tail_correction_x2fQ", c.tail_correction_x2fQ}};
}

inline json to_json(const asymptotics::RegimeClass& r) {
    return json{{"value", to_string(r.value)},
                {"threshold", r.threshold},
                {"predicted_residual_exponent", r.predicted_residual_exponent}};
}

inline json to_json(const asymptotics::TailReport& r) {
    json j{{"theorem_tag", r.theorem_tag},
           {"fit_window", {r.fit_window.x_lo, r.fit_window.x_hi}},
           {"fitted_exponent", r.fitted_exponent},
           {"predicted_exponent", r.predicted_exponent},
           {"fitted", r.fitted_coefficient},
           {"predicted", r.predicted_coefficient},
           {"status", to_string(r.status)}};
    if (std::isfinite(r.relative_error))
        j["relative_error"] = r.relative_error;
    else
        j["relative_error"] = nullptr;
    return j;
}

inline json verification_report(const ProblemParams& params,
                                const asymptotics::TailCoefficients& coeffs,
                                const asymptotics::RegimeClass& regime,
                                const std::vector<asymptotics::TailReport>& reports) {
    json j;
    j["params"] = to_json(params);
    j["coefficients"] = to_json(coeffs);
    j["regime"] = to_json(regime);
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    return j;
}

inline void write_profile_csv(std::ostream& os, const Profile& q) {
    os << "x,value\n";
    for (std::size_t j = 0; j < q.size(); ++j)
        os << fmt(q.grid.x(j)) << ',' << fmt(q.values[j]) << '\n';
}

inline Profile read_profile_csv(std::istream& is) {
    std::string line;
    std::getline(is, line);  // header
    std::vector<double> xs, vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        xs.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 16) throw DataError("read_profile_csv: too few rows");
    double dx = xs[1] - xs[0];
    Grid g = Grid::make(-xs[0], xs.size());
    if (std::abs(g.spacing() - dx) > 1e-9 * dx)
        throw DataError("read_profile_csv: grid is not the uniform [-L, L) layout");
    return Profile::make(g, std::move(vs));
}

}  // namespace fracwave::io

#endif
