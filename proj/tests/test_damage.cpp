#include <doctest.h>

#include <cmath>

#include "ablation/damage.hpp"

using namespace ablation;
namespace dm = ablation::damage;

TEST_SUITE_BEGIN("damage");

TEST_CASE("damage indicator basics") {
    dm::ArrheniusParams ap;  // 1.7e91, 5.67e5

    SUBCASE("zero time, zero damage") {
        CHECK(dm::damage_indicator(ap, [](double) { return 311.15; }, 0.0) == 0.0);
    }
    SUBCASE("constant temperature gives A t exp(-Ea/RT)") {
        const double T = 320.0;
        const double t = 25.0;
        const double expected = t * std::exp(dm::log_damage_rate(ap, T));
        CHECK(dm::damage_indicator(ap, [&](double) { return T; }, t) ==
              doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("non-decreasing in time") {
        auto traj = [](double tau) { return 311.15 + 5.0 * std::sin(tau); };
        double prev = 0.0;
        for (double t = 0.5; t <= 5.0; t += 0.5) {
            const double omega = dm::damage_indicator(ap, traj, t);
            CHECK(omega >= prev);
            prev = omega;
        }
    }
    SUBCASE("nonphysical temperatures are rejected") {
        CHECK_THROWS_AS(dm::damage_indicator(ap, [](double) { return 150.0; }, 1.0),
                        std::domain_error);
    }
    SUBCASE("blood temperature burns to Omega ~ 1 near 9.9e3 s") {
        const double t = 9.9e3;
        const double omega = dm::damage_indicator(ap, [](double) { return 311.15; }, t);
        CHECK(omega == doctest::Approx(1.0).epsilon(0.10));
    }
    SUBCASE("piecewise-constant trajectories integrate exactly with breakpoints") {
        auto traj = [](double tau) { return tau < 2.0 ? 318.0 : 322.0; };
        const double omega =
            dm::damage_indicator(ap, traj, 5.0, 1e-12, {2.0});
        const double exact = 2.0 * std::exp(dm::log_damage_rate(dm::ArrheniusParams{}, 318.0)) +
                             3.0 * std::exp(dm::log_damage_rate(dm::ArrheniusParams{}, 322.0));
        CHECK(omega == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("critical time") {
    dm::ArrheniusParams ap;

    SUBCASE("constant-temperature inversion in log space") {
        const double T = 323.15;
        const double expected = std::exp(ap.E_a / (dm::kGasConstant * T) - std::log(ap.A));
        CHECK(dm::constant_temperature_critical_time(ap, T) ==
              doctest::Approx(expected).epsilon(1e-12));
        const double via_root = dm::critical_time(ap, [&](double) { return T; }, 10.0);
        CHECK(via_root == doctest::Approx(expected).epsilon(1e-6));
    }
    SUBCASE("reference bound values: ~2.9 s at 50 C, ~9.9e3 s at blood temperature") {
        const double lower = dm::constant_temperature_critical_time(ap, 323.15);
        CHECK(std::abs(lower - 2.8871) / 2.8871 < 0.15);
        const double upper = dm::constant_temperature_critical_time(ap, 311.15);
        CHECK(std::abs(upper - 9.9e3) / 9.9e3 < 0.10);
    }
    SUBCASE("horizon exceeded is an error, not a silent clamp") {
        CHECK_THROWS_AS(dm::critical_time(ap, [](double) { return 311.15; }, 1.0),
                        convergence_error);
    }
    SUBCASE("rising trajectories burn no later than their minimum predicts") {
        auto rising = [](double tau) { return 320.0 + tau; };
        const double t_crit = dm::critical_time(ap, rising, 100.0);
        CHECK(t_crit <= dm::constant_temperature_critical_time(ap, 320.0));
    }
    SUBCASE("doubling A halves the constant-trajectory critical time") {
        dm::ArrheniusParams doubled = ap;
        doubled.A *= 2.0;
        CHECK(dm::constant_temperature_critical_time(doubled, 315.0) ==
              doctest::Approx(0.5 * dm::constant_temperature_critical_time(ap, 315.0))
                  .epsilon(1e-12));
    }
}

TEST_CASE("computed critical time respects the extremal bounds") {
    dm::ArrheniusParams ap;
    auto traj = [](double tau) { return 318.0 + 4.0 * std::tanh(tau / 30.0); };
    const double horizon = 1.5e3;
    const double t_crit = dm::critical_time(ap, traj, horizon);
    // trajectory extrema over [0, t_crit]
    const double T_min = 318.0;
    const double T_max = 318.0 + 4.0 * std::tanh(t_crit / 30.0);
    auto [lower, upper] = dm::critical_time_bounds(ap, T_min, T_max);
    CHECK(lower <= upper);
    CHECK(t_crit >= lower);
    CHECK(t_crit <= upper);

    SUBCASE("bounds collapse for a constant trajectory") {
        auto [lo, hi] = dm::critical_time_bounds(ap, 320.0, 320.0);
        CHECK(lo == doctest::Approx(hi).epsilon(1e-14));
        CHECK_THROWS_AS(dm::critical_time_bounds(ap, 330.0, 320.0), std::domain_error);
    }
}

TEST_SUITE_END();
