#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ablation/errors.hpp"

namespace ablation::damage {

inline constexpr double kGasConstant = 8.314;  // J/mol/K

// Frequency factor and activation energy of the Arrhenius burn integral.
// Defaults are the prostate-tumor values.
struct ArrheniusParams {
    double A = 1.7e91;    // [1/s]
    double E_a = 5.67e5;  // [J/mol]

    void validate() const;
};

using Trajectory = std::function<double(double)>;  // time -> temperature [K]

// ln A - E_a/(R T): the damage rate in log space. A = 1.7e91 never appears
// un-logged, so nothing overflows.
double log_damage_rate(const ArrheniusParams& p, double temperature);

// Damage indicator Omega(t) = A int_0^t exp[-E_a/(R T(tau))] dtau.
// Non-decreasing in t; temperatures below 200 K are rejected as nonphysical.
// `breakpoints` mark known kinks/jumps of the trajectory so piecewise-smooth
// (in particular piecewise-constant) histories integrate exactly.
double damage_indicator(const ArrheniusParams& p, const Trajectory& T, double t,
                        double rel_tol = 1e-9, std::vector<double> breakpoints = {});

// First time with Omega(t) = 1, by bracketing bisection (Omega is monotone).
// Throws convergence_error when Omega(horizon) < 1.
double critical_time(const ArrheniusParams& p, const Trajectory& T, double horizon);

// Constant-temperature inversion t = (1/A) exp(E_a/(R T)), evaluated in log
// space.
double constant_temperature_critical_time(const ArrheniusParams& p, double temperature);

// (1/A) e^{E_a/(R T_max)} <= t_crit <= (1/A) e^{E_a/(R T_min)}.
std::pair<double, double> critical_time_bounds(const ArrheniusParams& p, double T_min,
                                               double T_max);

}  // namespace ablation::damage
