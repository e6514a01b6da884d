#include "ablation/source.hpp"

#include <cmath>
#include <string>

namespace ablation::source {

int LaserProtocol::pulse_count() const {
    const double n = (t_end + delta_t) / (t_p + delta_t);
    const int rounded = static_cast<int>(std::lround(n));
    if (rounded < 1 || std::abs(n - rounded) > 1e-9 * n)
        throw config_error("pulse count (t_end + dt)/(t_p + dt) = " + std::to_string(n) +
                           " is not a positive integer");
    return rounded;
}

int LaserProtocol::pulse_containing(double t) const {
    if (t < 0.0) return -1;
    const double period = t_p + delta_t;
    // tolerance absorbs the rounding of t_j = j * period near pulse edges
    const double eps = 1e-9 * period;
    int j = static_cast<int>(std::floor((t + eps) / period));
    j = std::min(j, pulse_count() - 1);
    if (j < 0) return -1;
    const double local = t - j * period;
    return (local >= -eps && local <= t_p + eps) ? j : -1;
}

void LaserProtocol::validate() const {
    if (!(P_peak > 0.0)) throw config_error("laser power must be > 0");
    if (!(lambda_nm > 0.0)) throw config_error("laser wavelength must be > 0");
    if (!(t_p > 0.0)) throw config_error("pulse width must be > 0");
    if (delta_t < 0.0) throw config_error("pulse interval must be >= 0");
    if (!(r_f > 0.0)) throw config_error("fiber radius must be > 0");
    pulse_count();
}

LaserProtocol LaserProtocol::from_registry(const params::Registry& reg) {
    LaserProtocol p;
    p.P_peak = reg.laser.power_w;
    p.lambda_nm = reg.laser.lambda_nm;
    p.t_p = reg.laser.t_p;
    p.delta_t = reg.laser.delta_t;
    p.t_end = reg.laser.t_end;
    p.r_f = reg.geometry.r_f;
    p.validate();
    return p;
}

void Geometry::validate() const {
    if (!(0.0 < r_f && r_f < r_i && r_i < r_o))
        throw config_error("geometry requires 0 < r_f < r_i < r_o");
    if (!(0.0 < ell && ell < L)) throw config_error("geometry requires 0 < ell < L");
}

Geometry Geometry::from_registry(const params::Registry& reg) {
    Geometry g;
    g.r_f = reg.geometry.r_f;
    g.r_i = reg.geometry.r_i;
    g.ell = reg.geometry.ell;
    g.L = reg.geometry.L;
    g.r_o = reg.geometry.r_o.value_or(2.0 * reg.geometry.r_i);
    g.validate();
    return g;
}

Region region_at(const Geometry& geo, double r, double z) {
    const double az = std::abs(z);
    return (r <= geo.r_i && az <= geo.ell) ? Region::tumor : Region::healthy;
}

double irradiance(const LaserProtocol& p, double r, double t) {
    if (r < 0.0 || t < 0.0) return 0.0;
    if (r > p.r_f) return 0.0;
    if (p.pulse_containing(t) < 0) return 0.0;
    return p.P_peak / (M_PI * p.r_f * p.r_f);
}

double source_coefficient(const params::OpticalProperties& o, double lambda_nm) {
    const double mu_s = params::scattering(o, lambda_nm);
    const double mu_t = params::total_attenuation(o, lambda_nm);
    const double mu_tr = params::transport_attenuation(o, lambda_nm);
    return mu_s * (mu_t + o.g * o.mu_a) / mu_tr;
}

double scattered_source(const params::OpticalProperties& o, const LaserProtocol& p,
                        double r, double z, double t) {
    const double E = irradiance(p, r, t);
    if (E == 0.0) return 0.0;
    const double mu_t = params::total_attenuation(o, p.lambda_nm);
    return source_coefficient(o, p.lambda_nm) * E * std::exp(-mu_t * std::abs(z));
}

double scattered_source(const params::OpticalProperties& inner,
                        const params::OpticalProperties& outer, const Geometry& geo,
                        const LaserProtocol& p, double r, double z, double t) {
    const auto& o = region_at(geo, r, z) == Region::tumor ? inner : outer;
    return scattered_source(o, p, r, z, t);
}

double s1_over_s(const params::OpticalProperties& o, double lambda_nm) {
    const double mu_t = params::total_attenuation(o, lambda_nm);
    return o.g / (mu_t + o.g * o.mu_a);
}

double boundary_source_s1(const params::OpticalProperties& o, const LaserProtocol& p,
                          double r, double z) {
    return s1_over_s(o, p.lambda_nm) * scattered_source(o, p, r, z, p.t_p);
}

}  // namespace ablation::source
