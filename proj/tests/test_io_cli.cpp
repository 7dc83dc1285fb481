/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracwave/io.hpp"
#include "support/oracles.hpp"

using namespace fracwave;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / "fracwave_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(FRACWAVE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string strip_timestamp(std::string text) {
    auto j = nlohmann::json::parse(text);
    j.erase("generated_at");
    return j.dump(2);
}

}  // namespace

TEST_CASE("profile envelope round trip") {
    Grid g = Grid::make(50.0, 256);
    auto q = Profile::sample(g, oracles::benjamin_ono);
    auto params = ProblemParams::make(1.0, 2.0, Nonlinearity::integer_power);
    auto j = io::profile_envelope(q, params);
    auto [q2, p2] = io::profile_from_envelope(j);
    CHECK(q2.grid.half_length == q.grid.half_length);
    CHECK(q2.grid.n_points == q.grid.n_points);
    CHECK(p2.alpha == params.alpha);
    CHECK(p2.kind == params.kind);
    for (std::size_t i = 0; i < q.size(); i += 37) CHECK(q2.values[i] == q.values[i]);
}

TEST_CASE("profile csv round trip") {
    Grid g = Grid::make(25.0, 128);
    auto q = Profile::sample(g, [](double x) { return std::exp(-x * x / 7.0); });
    std::stringstream ss;
    io::write_profile_csv(ss, q);
    Profile q2 = io::read_profile_csv(ss);
    CHECK(q2.grid.n_points == q.grid.n_points);
    CHECK(q2.grid.half_length == Approx(q.grid.half_length));
    for (std::size_t i = 0; i < q.size(); i += 13)
        CHECK(q2.values[i] == Approx(q.values[i]).margin(1e-15));
}

TEST_CASE("cli usage and validation errors") {
    CHECK(run_cli("solve --alpha 0.4 --p 2.9 --out /dev/null") == 2);  // supercritical
    CHECK(run_cli("kernel --alpha 1.0 --xmin 5 --xmax 5 --out /dev/null") == 2);
    CHECK(run_cli("nonsense") == 2);
    CHECK(run_cli("solve --alpha 1.0") == 2);  // missing --p
}

TEST_CASE("cli kernel tabulation") {
    auto out = temp_dir() / "kernel.csv";
    CHECK(run_cli("kernel --alpha 1.0 --xmin 1 --xmax 100 --points 200 --out " + out.string()) == 0);
    std::ifstream is(out);
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,k_quadrature,k_series,abs_diff");
    std::string line;
    int rows = 0;
    double max_diff_past_20 = 0.0;
    while (std::getline(is, line)) {
        ++rows;
        std::stringstream ls(line);
        std::string tok;
        std::vector<double> cols;
        while (std::getline(ls, tok, ',')) cols.push_back(std::stod(tok));
        REQUIRE(cols.size() == 4);
        if (cols[0] >= 20.0) max_diff_past_20 = std::max(max_diff_past_20, cols[3]);
    }
    CHECK(rows == 200);
    // residual order at N=2, alpha=1 is |k3|/x^4 ~ 1.2e-5 at the window edge
    CHECK(max_diff_past_20 <= 1.3e-5);

    // near-origin tabulation for alpha < 1: finite, growing like x^{-0.5}|ln x|
    auto out2 = temp_dir() / "kernel_origin.csv";
    CHECK(run_cli("kernel --alpha 0.5 --xmin 0.001 --xmax 1 --points 40 --out " + out2.string()) ==
          0);
    std::ifstream is2(out2);
    std::getline(is2, header);
    double prev = 1e300;
    bool decreasing = true;
    while (std::getline(is2, line)) {
        double x = std::stod(line.substr(0, line.find(',')));
        double k = std::stod(line.substr(line.find(',') + 1));
        CHECK(std::isfinite(k));
        CHECK(k > 0.0);
        if (k > prev) decreasing = false;
        prev = k;
        (void)x;
    }
    CHECK(decreasing);  // monotone decay away from the singularity
}

TEST_CASE("cli kernel emits derivative column above alpha 1") {
    auto out = temp_dir() / "kernel15.csv";
    CHECK(run_cli("kernel --alpha 1.5 --xmin 2 --xmax 30 --points 20 --out " + out.string()) == 0);
    std::ifstream is(out);
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,k_quadrature,k_series,abs_diff,k_prime");
}

TEST_CASE("cli solve round trip and determinism") {
    auto out1 = temp_dir() / "solve1.json";
    auto out2 = temp_dir() / "solve2.json";
    std::string args = "solve --alpha 1.0 --p 2 --L 100 --n 4096 --out ";
    REQUIRE(run_cli(args + out1.string()) == 0);
    REQUIRE(run_cli(args + out2.string()) == 0);
    CHECK(strip_timestamp(slurp(out1)) == strip_timestamp(slurp(out2)));

    auto j = nlohmann::json::parse(slurp(out1));
    auto [q, params] = io::profile_from_envelope(j.at("profile"));
    CHECK(params.p == 2.0);
    CHECK(q.grid.n_points == 4096);
    CHECK(j.at("convergence").at("final_residual").get<double>() <= 1e-10);
    // solved profile close to the explicit solution on this smaller box
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        worst = std::max(worst, std::abs(q.values[i] - oracles::benjamin_ono(q.grid.x(i))));
    CHECK(worst < 5e-4);
}

TEST_CASE("cli solve non-convergence exit code") {
    CHECK(run_cli("solve --alpha 1.5 --p 2 --L 100 --n 1024 --tol 1e-30 --out /dev/null") == 3);
}

TEST_CASE("cli verify on the algebraic case") {
    auto out = temp_dir() / "verify.json";
    REQUIRE(run_cli("verify --alpha 1.0 --p 2 --out " + out.string()) == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("regime").at("value") == "dispersion_dominated");
    bool saw_first = false, saw_d3 = false;
    for (const auto& r : j.at("reports")) {
        if (r.at("theorem_tag") == "first_order") {
            saw_first = true;
            CHECK(r.at("status") == "pass");
        }
        if (r.at("theorem_tag") == "deriv_3") saw_d3 = true;
        CHECK(r.at("theorem_tag") != "cubic_third_order_q");  // p != 3: no cubic check
    }
    CHECK(saw_first);
    CHECK(saw_d3);
}

TEST_CASE("cli sweep aggregates one row per pair") {
    auto out = temp_dir() / "sweep.csv";
    int rc = run_cli("sweep --alpha 0.9:1.2:0.3 --p 2 --jobs 2 --out " + out.string());
    REQUIRE(rc == 0);
    std::ifstream is(out);
    std::string header, line;
    std::getline(is, header);
    CHECK(header.find("alpha,p,kind,regime") == 0);
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);  // alpha in {0.9, 1.2}
    // all-invalid sweeps are a usage error
    CHECK(run_cli("sweep --alpha 0.3 --p 5 --out /dev/null") == 2);
}
