#include <doctest.h>

#include <cmath>

#include "ablation/quadrature.hpp"
#include "ablation/rootfind.hpp"

using namespace ablation;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("adaptive simpson hits analytic integrals") {
    auto r1 = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
    CHECK(r1.value == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(r1.converged);

    auto r2 = adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 30.0, 1e-13);
    CHECK(r2.value == doctest::Approx(1.0 - std::exp(-30.0)).epsilon(1e-11));
}

TEST_CASE("breakpoints make kinked integrands exact") {
    auto f = [](double x) { return std::abs(x - 0.3); };
    auto r = integrate_with_breakpoints(f, 0.0, 1.0, {0.3}, 1e-14);
    const double exact = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("piecewise-constant segments integrate exactly") {
    auto f = [](double x) { return x < 1.0 ? 2.0 : 5.0; };
    auto r = integrate_with_breakpoints(f, 0.0, 3.0, {1.0}, 1e-14);
    CHECK(r.value == doctest::Approx(2.0 + 10.0).epsilon(1e-14));
}

TEST_CASE("bisect_root with the guarded Newton polish") {
    const double root = bisect_root([](double x) { return std::cos(x); }, 1.0, 2.0);
    CHECK(root == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(bisect_root([](double x) { return 1.0 + x * x; }, -1.0, 1.0),
                    convergence_error);
}

TEST_CASE("scan_sign_changes finds ordered brackets") {
    auto brackets = scan_sign_changes([](double x) { return std::sin(x); }, 0.1, 10.0,
                                      200, 10);
    REQUIRE(brackets.size() == 3);
    CHECK(brackets[0].first < M_PI);
    CHECK(brackets[0].second > M_PI);
    CHECK(brackets[1].first < 2 * M_PI);
    CHECK(brackets[2].second > 3 * M_PI);
}

TEST_SUITE_END();
