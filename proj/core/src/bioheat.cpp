#include "ablation/bioheat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ablation/damage.hpp"
#include "ablation/quadrature.hpp"

namespace ablation::bioheat {

double perfusion_rate(const params::ThermalProperties& t, double time, double t_crit) {
    if (time < 0.0) throw std::domain_error("perfusion_rate: t must be >= 0");
    if (!(t_crit > 0.0)) throw std::domain_error("perfusion_rate: t_crit must be > 0");
    if (time >= t_crit) return 0.0;
    return t.omega0 * (1.0 - time / t_crit);
}

double TemperatureParams::zeta0() const {
    return params::zeta0(thermal, blood, mu_t);
}

void TemperatureParams::validate() const {
    thermal.validate();
    if (!(t_p > 0.0)) throw std::domain_error("TemperatureParams: t_p must be > 0");
    if (!(t_crit > 0.0)) throw std::domain_error("TemperatureParams: t_crit must be > 0");
}

double temperature_in_pulse(const TemperatureParams& tp, double z, double t) {
    return tp.blood.T_b + temperature_rise_in_pulse(tp, z, t);
}

double temperature_rise_in_pulse(const TemperatureParams& tp, double z, double t) {
    tp.validate();
    if (t < 0.0 || t > tp.t_p)
        throw std::domain_error("temperature_in_pulse: t must lie in [0, t_p]");
    if (t == 0.0) return 0.0;

    const double rho_cp = tp.thermal.rho * tp.thermal.c_p();
    const double z0 = tp.zeta0();
    const double perf = tp.blood.c_b() * tp.thermal.omega0;  // c_b rho_b w
    const double conduct = tp.thermal.k() * tp.mu_t * tp.mu_t - perf;  // = rho c_p zeta0

    const double dz_in = tp.zeta_in - z0;
    double first, second;
    if (std::abs(dz_in) < 1e-9 * std::max(std::abs(tp.zeta_in), std::abs(z0))) {
        if (!tp.allow_degenerate_limits)
            throw degeneracy_error("temperature_in_pulse: zeta_in == zeta0 degeneracy");
        first = t * std::exp(z0 * t) / rho_cp;  // limit form
    } else {
        first = (std::exp(tp.zeta_in * t) - std::exp(z0 * t)) / (rho_cp * dz_in);
    }
    if (std::abs(conduct) < 1e-9 * std::max(tp.thermal.k() * tp.mu_t * tp.mu_t, perf)) {
        if (!tp.allow_degenerate_limits)
            throw degeneracy_error(
                "temperature_in_pulse: k mu_t^2 == c_b rho_b w degeneracy");
        second = -t / rho_cp;  // limit of (1 - e^{zeta0 t})/(rho c_p zeta0)
    } else {
        second = -std::expm1(z0 * t) / conduct;
    }
    return tp.mu_a * tp.s_in * std::exp(-tp.mu_t * std::abs(z)) * (first + second);
}

double zeta1_time_integral(const TemperatureParams& tp, double x) {
    if (x < 0.0) throw std::domain_error("zeta1_time_integral: x must be >= 0");
    const double rho_cp = tp.thermal.rho * tp.thermal.c_p();
    const double z0 = tp.zeta0();                                 // A0
    const double slope = tp.blood.c_b() * tp.thermal.omega0 /
                         (rho_cp * tp.t_crit);                    // B0
    const double zc = z0 + slope * tp.t_crit;                     // zeta(0; t_crit)

    auto mid_piece = [&](double from, double to) {
        // integral of A0 + B0 tau over [from, to]
        return z0 * (to - from) + 0.5 * slope * (to * to - from * from);
    };
    if (x <= tp.t_p) return z0 * x;
    double acc = z0 * tp.t_p;
    if (x <= tp.t_crit) return acc + mid_piece(tp.t_p, x);
    acc += mid_piece(tp.t_p, tp.t_crit);
    return acc + zc * (x - tp.t_crit);
}

double temperature_post_pulse(const TemperatureParams& tp, const TimeFunction& phi,
                              double temperature_at_tp, double t,
                              std::vector<double> phi_breakpoints, double abs_tol) {
    tp.validate();
    if (t < tp.t_p) throw std::domain_error("temperature_post_pulse: t must be >= t_p");
    if (t == tp.t_p) return temperature_at_tp;

    const double rho_cp = tp.thermal.rho * tp.thermal.c_p();
    auto integrand = [&](double s) {
        return phi(s) * std::exp(zeta1_time_integral(tp, t - s));
    };
    // zeta1's kinks sit where t - s crosses t_p and t_crit
    phi_breakpoints.push_back(t - tp.t_p);
    phi_breakpoints.push_back(t - tp.t_crit);
    const double kernel_tol = abs_tol * rho_cp / tp.mu_a;
    auto q = integrate_with_breakpoints(integrand, tp.t_p, t, std::move(phi_breakpoints),
                                        kernel_tol);
    if (!q.converged)
        throw convergence_error("post-pulse Duhamel quadrature did not converge",
                                q.error_estimate * tp.mu_a / rho_cp);
    return temperature_at_tp + tp.mu_a / rho_cp * q.value;
}

double critical_time_fixed_point(
    const std::function<TimeFunction(double)>& trajectory_builder,
    double arrhenius_A, double arrhenius_Ea, double T_b, double horizon) {
    damage::ArrheniusParams ap{arrhenius_A, arrhenius_Ea};
    // Start from the blood-temperature upper bound.
    double t_crit = damage::constant_temperature_critical_time(ap, T_b);
    for (int round = 0; round < 20; ++round) {
        const auto trajectory = trajectory_builder(t_crit);
        const double updated = damage::critical_time(ap, trajectory, horizon);
        const double change = std::abs(updated - t_crit) / std::max(updated, 1e-300);
        t_crit = updated;
        if (change < 0.01) return t_crit;
    }
    throw convergence_error("t_crit fixed point did not settle within 20 rounds", t_crit);
}

}  // namespace ablation::bioheat
