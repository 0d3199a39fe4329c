#include <doctest.h>

#include <cmath>
#include <vector>

#include "fblnet/numerics.hpp"

using namespace fblnet;

TEST_CASE("q_func reference values") {
    CHECK(q_func(0.0).value() == 0.5);
    // Frozen against a 40-digit erfc evaluation.
    CHECK(std::abs(q_func(2.3263478740).value() - 0.010000000001088502829) < 1e-14);
    CHECK(q_func(2.3263478740).value() == doctest::Approx(1e-2).epsilon(1e-9));

    // Deep tail: tiny but never negative.
    const double tail = q_func(40.0).value();
    CHECK(tail >= 0.0);
    CHECK(tail < 1e-300);
}

TEST_CASE("q_func rejects non-finite input") {
    CHECK_THROWS_AS(q_func(std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(q_func(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("q_func symmetry Q(x) + Q(-x) = 1") {
    for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 7.0, 10.0}) {
        CHECK(std::abs(q_func(x).value() + q_func(-x).value() - 1.0) < 1e-12);
    }
}

TEST_CASE("q_func_inv reference values") {
    CHECK(q_func_inv(0.5) == 0.0);
    CHECK(std::abs(q_func_inv(1e-2) - 2.3263478740408411009) < 1e-8);
    CHECK(std::abs(q_func_inv(1e-8) - 5.6120012441747887315) < 1e-8);
    CHECK(std::abs(q_func_inv(1e-12) - 7.0344838253011319298) < 1e-8);
    // Symmetric upper half.
    CHECK(q_func_inv(0.99) == doctest::Approx(-2.3263478740408411009).epsilon(1e-10));
}

TEST_CASE("q_func_inv domain") {
    CHECK_THROWS_AS(q_func_inv(0.0), std::domain_error);
    CHECK_THROWS_AS(q_func_inv(1.0), std::domain_error);
    CHECK_THROWS_AS(q_func_inv(-0.1), std::domain_error);
    CHECK_THROWS_AS(q_func_inv(1.5), std::domain_error);
}

TEST_CASE("q_func_inv round trip down to 1e-12") {
    for (int k = 1; k <= 12; ++k) {
        const double p = std::pow(10.0, -k);
        const double back = q_func(q_func_inv(p)).value();
        CHECK(std::abs(back - p) / p < 1e-9);
    }
    // Strictly decreasing in p.
    double prev = q_func_inv(1e-12);
    for (double p : {1e-10, 1e-6, 1e-3, 0.1, 0.3, 0.49}) {
        const double x = q_func_inv(p);
        CHECK(x < prev);
        prev = x;
    }
}

TEST_CASE("integrate known integrals") {
    QuadratureSpec spec;
    CHECK(std::abs(integrate([](double x) { return std::exp(-x); }, 0.0, kInfinity, spec) - 1.0) <
          1e-10);
    CHECK(integrate([](double) { return 1.0; }, 0.0, 0.0, spec) == 0.0);
    CHECK(integrate([](double x) { return x; }, 0.0, 1.0, spec) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("integrate exp(-(2^c-1)) against midpoint oracle and frozen value") {
    auto f = [](double c) { return std::exp(-(std::exp2(c) - 1.0)); };

    // Brute-force midpoint rule, 1e7 points over [0, 50]; the integrand is
    // zero far below double precision beyond that.
    const int n = 10'000'000;
    const double upper = 50.0;
    const double h = upper / n;
    double riemann = 0.0;
    for (int i = 0; i < n; ++i) riemann += f((i + 0.5) * h);
    riemann *= h;

    const double adaptive = integrate(f, 0.0, kInfinity);
    CHECK(std::abs(adaptive - riemann) < 1e-6);
    // = log2(e) * e * E1(1), frozen from a 30-digit evaluation.
    CHECK(adaptive == doctest::Approx(0.86034738227088595119).epsilon(1e-10));
}

TEST_CASE("integrate is linear on smooth functions") {
    QuadratureSpec spec;
    auto f = [](double x) { return std::exp(-x); };
    auto g = [](double x) { return std::cos(x) * std::exp(-0.5 * x); };
    const double alpha = 2.5, beta = -1.25;
    const double lhs = integrate([&](double x) { return alpha * f(x) + beta * g(x); }, 0.0, 3.0, spec);
    const double rhs = alpha * integrate(f, 0.0, 3.0, spec) + beta * integrate(g, 0.0, 3.0, spec);
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("tightening rel_tol never increases the reported error bound") {
    auto f = [](double c) { return std::exp(-(std::exp2(c) - 1.0)); };
    double prev_bound = std::numeric_limits<double>::infinity();
    for (double rel : {1e-3, 1e-5, 1e-7, 1e-9, 1e-11}) {
        QuadratureSpec spec;
        spec.rel_tol = rel;
        spec.abs_tol = 1e-15;
        const auto r = integrate_with_error(f, 0.0, kInfinity, spec);
        CHECK(r.error_bound <= prev_bound);
        prev_bound = r.error_bound;
    }
}

TEST_CASE("integrate reports convergence failure with best estimate") {
    QuadratureSpec spec;
    spec.max_subdivisions = 3;
    spec.rel_tol = 1e-14;
    spec.abs_tol = 1e-300;
    auto nasty = [](double x) { return 1.0 / std::sqrt(x); };
    try {
        integrate(nasty, 1e-30, 1.0, spec);
        FAIL("expected convergence_error");
    } catch (const convergence_error& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("Probability validates its range") {
    CHECK(Probability(0.0).value() == 0.0);
    CHECK(Probability(1.0).value() == 1.0);
    CHECK_THROWS_AS(Probability(-0.01), std::domain_error);
    CHECK_THROWS_AS(Probability(1.01), std::domain_error);
    CHECK_THROWS_AS(Probability(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("QuadratureSpec invariants") {
    QuadratureSpec bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.max_subdivisions = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
