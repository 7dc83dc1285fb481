/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fracwave/kernel.hpp"
#include "fracwave/params.hpp"
#include "support/oracles.hpp"

using namespace fracwave;
using specfun::EvalOptions;
using Catch::Approx;

namespace {
constexpr double pi = 3.14159265358979323846;
// Reference values computed with 30-digit arithmetic from the defining
// integrals before this module was built.
struct Ref {
    double arg, alpha, value;
};
}  // namespace

TEST_CASE("critical exponent branches") {
    CHECK(critical_exponent(0.5) == Approx(3.0));
    CHECK(std::isinf(critical_exponent(1.5)));
    CHECK(std::isinf(critical_exponent(1.0)));
    CHECK_THROWS_AS(critical_exponent(0.0), std::domain_error);
    CHECK_THROWS_AS(critical_exponent(2.0), std::domain_error);
}

TEST_CASE("problem parameter validation") {
    CHECK_NOTHROW(ProblemParams::make(1.5, 4.0, Nonlinearity::signed_power));
    // p*(0.4) = 7/3, so p = 2.9 is supercritical
    CHECK_THROWS_AS(ProblemParams::make(0.4, 2.9, Nonlinearity::signed_power), std::domain_error);
    CHECK_THROWS_AS(ProblemParams::make(1.0, 2.5, Nonlinearity::integer_power), std::domain_error);
    CHECK_THROWS_AS(ProblemParams::make(2.0, 2.0, Nonlinearity::integer_power), std::domain_error);
    CHECK_NOTHROW(ProblemParams::boundary(2.0, 2.0, Nonlinearity::integer_power));
}

TEST_CASE("kernel coefficients match the closed forms") {
    CHECK(specfun::kernel_coefficient(1, 1.0) == Approx(1.0 / pi).epsilon(1e-14));
    CHECK(std::abs(specfun::kernel_coefficient(2, 1.0)) < 1e-15);
    CHECK(specfun::kernel_coefficient(1, 0.5) == Approx(0.19947114020071634).epsilon(1e-13));
    CHECK(specfun::kernel_coefficient(2, 0.5) == Approx(-1.0 / pi).epsilon(1e-14));
    CHECK(specfun::kernel_coefficient(3, 0.5) == Approx(0.29920671030107451).epsilon(1e-13));
    CHECK(specfun::kernel_coefficient(1, 1.5) == Approx(0.29920671030107451).epsilon(1e-13));
    CHECK(specfun::kernel_coefficient(2, 1.5) == Approx(1.909859317102744).epsilon(1e-13));
    // boundary value used by the alpha = 2 validation profile
    CHECK(std::abs(specfun::kernel_coefficient(1, 2.0)) < 1e-14);
    CHECK_THROWS_AS(specfun::kernel_coefficient(0, 1.0), std::domain_error);
    CHECK(!specfun::kernel_coefficient_extrapolated(2));
    CHECK(specfun::kernel_coefficient_extrapolated(3));
}

TEST_CASE("h at the origin and at the Gaussian boundary") {
    EvalOptions o;
    CHECK(specfun::h_eval(0.0, 0.5, o) == Approx(std::tgamma(3.0)).epsilon(1e-13));
    CHECK(specfun::h_eval(0.0, 1.25, o) == Approx(std::tgamma(1.8)).epsilon(1e-13));
    for (double y : {0.3, 1.0, 2.0, 4.0}) {
        double exact = std::sqrt(pi) / 2.0 * std::exp(-y * y / 4.0);
        CHECK(specfun::h_eval(y, 2.0, o) == Approx(exact).epsilon(1e-11));
    }
}

TEST_CASE("h against frozen high-precision references") {
    EvalOptions o;
    const Ref refs[] = {
        {0.5, 0.6, 0.62184120395257285},  {1.0, 0.6, 0.31969379551080799},
        {5.0, 1.5, 0.022342177721582053}, {3.0, 0.5, 0.074767369891401166},
        {12.0, 1.5, 0.0020361462802403613},
    };
    for (const auto& r : refs) {
        CAPTURE(r.arg, r.alpha);
        CHECK(specfun::h_eval(r.arg, r.alpha, o) == Approx(r.value).epsilon(5e-11));
        CHECK(specfun::h_eval(-r.arg, r.alpha, o) ==
              Approx(specfun::h_eval(r.arg, r.alpha, o)).epsilon(1e-14));
    }
    // alpha = 1 has the closed form 1/(1+y^2)
    for (double y : {0.4, 3.0, 9.0, 30.0, 80.0})
        CHECK(specfun::h_eval(y, 1.0, o) == Approx(1.0 / (1.0 + y * y)).epsilon(5e-10));
}

TEST_CASE("h tail matches pi k1 / y^{alpha+1}") {
    EvalOptions o;
    for (double alpha : {0.7, 1.0, 1.6}) {
        double k1 = specfun::kernel_coefficient(1, alpha);
        double y = 150.0;
        double lead = pi * k1 / std::pow(y, alpha + 1.0);
        CHECK(specfun::h_eval(y, alpha, o) == Approx(lead).epsilon(5.0 / std::pow(y, alpha)));
    }
    // two-term check at y = 50, alpha = 1: k2 vanishes so the error is O(y^-4)
    double h50 = specfun::h_eval(50.0, 1.0, o);
    CHECK(std::abs(h50 - 1.0 / 2500.0) < 2.0 / std::pow(50.0, 4.0));
}

TEST_CASE("rotated-contour path agrees with the damped-cosine path") {
    EvalOptions o;
    o.quad_rel_tol = 1e-10;
    for (double alpha : {0.6, 1.0, 1.5}) {
        for (double y : {0.5, 1.0, 2.0, 5.0, 11.0, 27.0, 63.0, 100.0}) {
            CAPTURE(alpha, y);
            double a = specfun::h_eval(y, alpha, o);
            double b = specfun::h_eval_rotated(y, alpha, o);
            CHECK(std::abs(a - b) <= 10.0 * o.quad_rel_tol * std::abs(a));
        }
    }
    CHECK_THROWS_AS(specfun::h_eval_rotated(-1.0, 1.5, o), std::domain_error);
}

TEST_CASE("h near-origin bounds") {
    EvalOptions o;
    for (double alpha : {0.5, 1.0, 1.5}) {
        double beta = std::min(1.0, alpha);
        for (double y = 1e-3; y <= 1.0; y *= 3.16) {
            double h = specfun::h_eval(y, alpha, o);
            CHECK(std::abs(y * h) <= 5.0 * std::pow(y, beta));
            double hp = specfun::h_prime_eval(y, alpha, o);
            CHECK(std::abs(hp) <= 5.0 / y);
        }
    }
}

TEST_CASE("k against frozen high-precision references") {
    EvalOptions o;
    const Ref refs[] = {
        {20.0, 1.0, 0.0007843812541904438}, {5.0, 1.5, 0.0077841010973914292},
        {0.5, 0.6, 0.14103066803275604},    {1.0, 1.0, 0.10930059986104834},
        {10.0, 0.5, 0.00395747371032848},   {2.0, 0.5, 0.027865654612831701},
        {50.0, 0.6, 0.00038264552614736199},{3.0, 1.2, 0.026308014269371177},
        {0.1, 0.6, 0.5470589460584473},
    };
    for (const auto& r : refs) {
        CAPTURE(r.arg, r.alpha);
        CHECK(specfun::k_eval(r.arg, r.alpha, o) == Approx(r.value).epsilon(1e-9));
    }
    // bounded at the origin above alpha = 1; no closed form is claimed
    CHECK(specfun::k_eval(0.0, 1.5, o) == Approx(0.76980035891950102).epsilon(1e-10));
    CHECK_THROWS_AS(specfun::k_eval(0.0, 1.0, o), std::domain_error);
    CHECK_THROWS_AS(specfun::k_eval(0.0, 0.7, o), std::domain_error);
    CHECK_THROWS_AS(specfun::k_eval(1.0, 2.0, o), std::domain_error);
}

TEST_CASE("k agrees with the direct Fourier oracle") {
    EvalOptions o;
    o.quad_rel_tol = 1e-9;
    for (double alpha : {0.6, 1.0, 1.5}) {
        for (double x : {0.1, 0.7, 2.0, 6.5, 17.0, 50.0}) {
            CAPTURE(alpha, x);
            double lib = specfun::k_eval(x, alpha, o);
            double ora = oracles::k_fourier(x, alpha);
            CHECK(std::abs(lib - ora) <= 1e-6 * std::abs(ora));
        }
    }
}

TEST_CASE("kernel parity and positivity on random samples") {
    EvalOptions o;
    o.quad_rel_tol = 1e-8;
    auto xs = oracles::random_samples(200, -50.0, 50.0);
    int i = 0;
    for (double alpha : {0.5, 1.0, 1.5}) {
        for (std::size_t j = 0; j < 20; ++j) {  // 20 per alpha keeps this case quick
            double x = xs[i++ % xs.size()];
            if (std::abs(x) < 1e-3) x += 0.5;
            double kp = specfun::k_eval(x, alpha, o);
            double km = specfun::k_eval(-x, alpha, o);
            CAPTURE(alpha, x);
            CHECK(std::abs(kp - km) <= 1e-10 * (1.0 + std::abs(kp)));
            CHECK(kp > 0.0);
        }
    }
}

TEST_CASE("series evaluation and truncation order") {
    auto s1 = specfun::KernelSeries::make(1.0, 1);
    auto s2 = specfun::KernelSeries::make(1.0, 2);
    CHECK(specfun::k_series_eval(10.0, s1) == Approx(1.0 / (100.0 * pi)).epsilon(1e-14));
    // k2(1) = 0: N = 2 identical to N = 1
    CHECK(specfun::k_series_eval(7.0, s2) ==
          Approx(specfun::k_series_eval(7.0, s1)).epsilon(1e-14));
    CHECK_THROWS_AS(specfun::k_series_eval(0.9, s2), std::domain_error);

    // x = 20, alpha = 1: k differs from 1/(pi x^2) by about |k3|/x^4, under 2%
    EvalOptions o;
    double k20 = specfun::k_eval(20.0, 1.0, o);
    CHECK(k20 == Approx(1.0 / (400.0 * pi)).epsilon(0.02));

    // residual after N terms scales like x^{-((N+1)a+1)}; fit the slope.
    // k4 = -sin(2 pi a) Gamma(4a+1)/pi vanishes at a = 0.5, 1, 1.5, so pick
    // orders where the first omitted term is alive.
    for (double alpha : {0.7, 1.2}) {
        auto s3 = specfun::KernelSeries::make(alpha, 3);
        EvalOptions oq;
        oq.quad_rel_tol = 1e-10;
        oq.crossover_x = 1e9;  // force quadrature
        std::vector<double> lx, ly;
        for (double x = 10.0; x <= 40.0; x *= 1.45) {
            double d = std::abs(specfun::k_eval(x, alpha, oq) - specfun::k_series_eval(x, s3));
            lx.push_back(std::log(x));
            ly.push_back(std::log(d));
        }
        double n = lx.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i2 = 0; i2 < lx.size(); ++i2) {
            sx += lx[i2]; sy += ly[i2]; sxx += lx[i2] * lx[i2]; sxy += lx[i2] * ly[i2];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CAPTURE(alpha);
        CHECK(slope == Approx(-(4.0 * alpha + 1.0)).margin(0.35));
    }
}

TEST_CASE("extrapolated k3 validated against quadrature") {
    EvalOptions o;
    o.quad_rel_tol = 1e-11;
    o.crossover_x = 1e9;
    for (double alpha : {0.5, 1.2}) {
        double k1 = specfun::kernel_coefficient(1, alpha);
        double k2 = specfun::kernel_coefficient(2, alpha);
        double k3 = specfun::kernel_coefficient(3, alpha);
        // (k - k1 x^{-(a+1)} - k2 x^{-(2a+1)}) x^{3a+1} -> k3, corrections O(x^-a..)
        double x = alpha < 1.0 ? 600.0 : 60.0;
        double resid = specfun::k_eval(x, alpha, o) - k1 * std::pow(x, -(alpha + 1.0)) -
                       k2 * std::pow(x, -(2.0 * alpha + 1.0));
        double measured = resid * std::pow(x, 3.0 * alpha + 1.0);
        CAPTURE(alpha, x);
        CHECK(measured == Approx(k3).epsilon(0.15));
    }
}

TEST_CASE("k' sign, parity and series consistency") {
    EvalOptions o;
    CHECK_THROWS_AS(specfun::k_prime_eval(1.0, 0.8, o), UnsupportedError);
    CHECK_THROWS_AS(specfun::k_prime_eval(0.0, 1.5, o), std::domain_error);
    const Ref refs[] = {
        {5.0, 1.5, -0.0040892718493283362},
        {20.0, 1.5, -2.3503296489097909e-5},
        {2.0, 1.2, -0.039024733991503177},
    };
    for (const auto& r : refs) {
        CAPTURE(r.arg, r.alpha);
        double v = specfun::k_prime_eval(r.arg, r.alpha, o);
        CHECK(v == Approx(r.value).epsilon(1e-8));
        CHECK(specfun::k_prime_eval(-r.arg, r.alpha, o) == Approx(-v).epsilon(1e-12));
        CHECK(v < 0.0);  // k positive and decreasing on the tail
    }
    // series limit: x^{alpha+2} k'(x) -> -(alpha+1) k1
    double alpha = 1.5;
    double k1 = specfun::kernel_coefficient(1, alpha);
    double x = 70.0;
    CHECK(specfun::k_prime_eval(x, alpha, o) * std::pow(x, alpha + 2.0) ==
          Approx(-(alpha + 1.0) * k1).epsilon(0.05));
    // finite differences of k agree with k'
    auto kf = [&](double t) { return specfun::k_eval(t, alpha, o); };
    for (double xv : {3.0, 9.0}) {
        double fd = oracles::k_prime_fd(kf, xv, 1e-3);
        CHECK(specfun::k_prime_eval(xv, alpha, o) == Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("near-origin growth envelopes") {
    EvalOptions o;
    o.quad_rel_tol = 1e-8;
    // alpha = 0.5: k(x) x^{1-alpha}/|ln x| stays bounded
    double bound = 0.0;
    for (double x = 1e-6; x <= 0.1; x *= 10.0) {
        double v = specfun::k_eval(x, 0.5, o) * std::pow(x, 0.5) / std::abs(std::log(x));
        CHECK(std::isfinite(v));
        bound = std::max(bound, v);
    }
    CHECK(bound < 1.0);
    // alpha = 1.5: k bounded near 0
    for (double x = 1e-6; x <= 0.1; x *= 10.0) {
        double v = specfun::k_eval(x, 1.5, o);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("kernel normalization") {
    EvalOptions o;
    for (double alpha : {0.5, 1.0, 1.5})
        CHECK(specfun::kernel_mass(alpha, o) == Approx(1.0).margin(1e-6));
}

TEST_CASE("eval options validation") {
    EvalOptions bad;
    bad.quad_rel_tol = -1.0;
    CHECK_THROWS_AS(specfun::h_eval(1.0, 1.0, bad), std::domain_error);
    bad = EvalOptions{};
    bad.crossover_x = 0.5;
    CHECK_THROWS_AS(specfun::k_eval(1.0, 1.0, bad), std::domain_error);
}
