#pragma once

#include <functional>

#include "ablation/params.hpp"

namespace ablation::bioheat {

// omega_b(t) = omega0 (1 - t/t_crit) on [0, t_crit], zero afterwards.
double perfusion_rate(const params::ThermalProperties& t, double time, double t_crit);

// Everything the Duhamel temperature formulas need at one (tissue, laser)
// configuration. mu_a/mu_t/s_in/zeta_in are the inner-tissue values.
struct TemperatureParams {
    params::ThermalProperties thermal;
    params::BloodConstants blood;
    double mu_a = 0.0;
    double mu_t = 0.0;
    double s_in = 0.0;
    double zeta_in = 0.0;
    double t_p = 0.0;
    double t_crit = 0.0;
    // Enables the l'Hopital limit forms when a closed-form denominator
    // degenerates. Off by default: the limits are not part of the source
    // formulas and are labeled as an extension.
    bool allow_degenerate_limits = false;

    double zeta0() const;  // zeta(0; 0)
    void validate() const;
};

// Closed-form in-pulse temperature at depth z (0 <= t <= t_p):
// T_b + mu_a S_in e^{-mu_t z} [ (e^{zeta_in t} - e^{zeta0 t})/(rho c_p (zeta_in - zeta0))
//                              + (1 - e^{zeta0 t})/(k mu_t^2 - c_b rho_b w) ].
double temperature_in_pulse(const TemperatureParams& tp, double z, double t);

// The rise T - T_b of the same closed form, kept separate because adding the
// 311 K baseline quantizes sub-nanokelvin rises to the ulp of T_b.
double temperature_rise_in_pulse(const TemperatureParams& tp, double z, double t);

// Exact piecewise antiderivative of zeta1(0; tau) on [0, x].
double zeta1_time_integral(const TemperatureParams& tp, double x);

using TimeFunction = std::function<double(double)>;

// Post-pulse Duhamel continuation:
// T(t) = T(t_p) + (mu_a/(rho c_p)) int_{t_p}^t phi(s) exp[Z1(t - s)] ds,
// with phi the fluence history at (r_f, z) and Z1 the zeta1 integral above.
// `phi_breakpoints` lists the integrand's kinks (pulse edges) inside [t_p, t];
// the zeta1 kinks at t - t_p and t - t_crit are added automatically.
// Quadrature is adaptive Simpson to abs_tol kelvin; non-convergence is
// reported with the achieved estimate.
double temperature_post_pulse(const TemperatureParams& tp, const TimeFunction& phi,
                              double temperature_at_tp, double t,
                              std::vector<double> phi_breakpoints = {},
                              double abs_tol = 1e-6);

// Resolves the t_crit <-> zeta1 circularity by fixed point: start from the
// blood-temperature upper bound, rebuild the trajectory, recompute t_crit
// from the damage integral, iterate to 1% relative change (max 20 rounds).
// `trajectory_builder` maps a candidate t_crit to the temperature history
// T(tau) used by the damage integral. Implemented with the damage module.
double critical_time_fixed_point(
    const std::function<TimeFunction(double)>& trajectory_builder,
    double arrhenius_A, double arrhenius_Ea, double T_b, double horizon);

}  // namespace ablation::bioheat
