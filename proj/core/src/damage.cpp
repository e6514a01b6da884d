#include "ablation/damage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ablation/quadrature.hpp"
#include "ablation/rootfind.hpp"

namespace ablation::damage {

void ArrheniusParams::validate() const {
    if (!(A > 0.0)) throw std::domain_error("Arrhenius A must be > 0");
    if (!(E_a > 0.0)) throw std::domain_error("Arrhenius E_a must be > 0");
}

double log_damage_rate(const ArrheniusParams& p, double temperature) {
    if (!(temperature >= 200.0))
        throw std::domain_error("nonphysical temperature " + std::to_string(temperature) +
                                " K in damage integrand");
    return std::log(p.A) - p.E_a / (kGasConstant * temperature);
}

double damage_indicator(const ArrheniusParams& p, const Trajectory& T, double t,
                        double rel_tol, std::vector<double> breakpoints) {
    p.validate();
    if (t < 0.0) throw std::domain_error("damage_indicator: t must be >= 0");
    if (t == 0.0) return 0.0;
    // Scale the absolute quadrature tolerance off a coarse sample of the rate.
    double max_rate = 0.0;
    for (int i = 0; i <= 32; ++i)
        max_rate = std::max(max_rate, std::exp(log_damage_rate(p, T(t * i / 32.0))));
    const double abs_tol = std::max(rel_tol * max_rate * t, 1e-300);
    auto integrand = [&](double tau) { return std::exp(log_damage_rate(p, T(tau))); };
    return integrate_with_breakpoints(integrand, 0.0, t, std::move(breakpoints), abs_tol)
        .value;
}

double critical_time(const ArrheniusParams& p, const Trajectory& T, double horizon) {
    if (!(horizon > 0.0)) throw std::domain_error("critical_time: horizon must be > 0");
    const double omega_end = damage_indicator(p, T, horizon);
    if (omega_end < 1.0)
        throw convergence_error("damage indicator only reached " +
                                    std::to_string(omega_end) + " at the horizon",
                                omega_end);
    auto f = [&](double t) { return damage_indicator(p, T, t) - 1.0; };
    return bisect_root(f, 0.0, horizon, 1e-12 * horizon);
}

double constant_temperature_critical_time(const ArrheniusParams& p, double temperature) {
    p.validate();
    if (!(temperature >= 200.0))
        throw std::domain_error("nonphysical temperature in critical-time inversion");
    return std::exp(p.E_a / (kGasConstant * temperature) - std::log(p.A));
}

std::pair<double, double> critical_time_bounds(const ArrheniusParams& p, double T_min,
                                               double T_max) {
    if (!(T_min > 0.0) || T_min > T_max)
        throw std::domain_error("critical_time_bounds requires 0 < T_min <= T_max");
    return {constant_temperature_critical_time(p, T_max),
            constant_temperature_critical_time(p, T_min)};
}

}  // namespace ablation::damage
