#include "ablation/scenario.hpp"

#include <sstream>

namespace ablation::scenario {

Scenario make_scenario(const params::Registry& reg, const std::string& pair,
                       const Overrides& ov) {
    Scenario s;
    s.registry = reg;
    if (pair == "breast") {
        s.tumor = "breast_tumor";
    } else if (pair == "prostate") {
        s.tumor = "prostate_tumor";
    } else {
        s.tumor = pair;
    }
    if (!reg.has_optics(s.tumor)) throw config_error("unknown tissue '" + s.tumor + "'");
    s.healthy = params::Registry::healthy_partner(s.tumor);

    source::LaserProtocol protocol = source::LaserProtocol::from_registry(reg);
    if (ov.power_w) protocol.P_peak = *ov.power_w;
    if (ov.lambda_nm) protocol.lambda_nm = *ov.lambda_nm;
    if (ov.t_p) {
        protocol.t_p = *ov.t_p;
        // keep the ten-times-the-pulse-width default and a 10-pulse train
        // unless explicitly overridden
        protocol.delta_t = ov.delta_t ? *ov.delta_t : 10.0 * protocol.t_p;
        protocol.t_end = ov.t_end ? *ov.t_end
                                  : 10.0 * protocol.t_p + 9.0 * protocol.delta_t;
    } else {
        if (ov.delta_t) protocol.delta_t = *ov.delta_t;
        if (ov.t_end) protocol.t_end = *ov.t_end;
    }
    protocol.validate();

    source::Geometry geometry = source::Geometry::from_registry(reg);

    const auto& tumor_optics = reg.optics_for(s.tumor);
    const auto& healthy_optics = reg.optics_for(s.healthy);
    const double lambda = protocol.lambda_nm;

    s.field.inner = ov.g ? tumor_optics.at(lambda, *ov.g) : tumor_optics.at(lambda);
    s.field.outer = ov.g ? healthy_optics.at(lambda, *ov.g) : healthy_optics.at(lambda);
    s.field.protocol = protocol;
    s.field.geometry = geometry;
    s.field.gamma_r = ov.gamma_r ? *ov.gamma_r : reg.gamma_r;
    if (ov.series_terms) s.field.series_terms = *ov.series_terms;
    return s;
}

bioheat::TemperatureParams Scenario::temperature_params(double t_crit) const {
    bioheat::TemperatureParams tp;
    tp.thermal = registry.thermal_for(tumor);
    tp.blood = registry.blood;
    const double lambda = field.protocol.lambda_nm;
    tp.mu_a = field.inner.mu_a;
    tp.mu_t = params::total_attenuation(field.inner, lambda);
    tp.s_in = fluence::s_in(field.inner, field.protocol);
    tp.zeta_in = params::zeta_in(field.inner, lambda);
    tp.t_p = field.protocol.t_p;
    tp.t_crit = t_crit;
    return tp;
}

std::string describe(const Scenario& s) {
    std::ostringstream os;
    os.precision(12);
    os << "tumor=" << s.tumor << " healthy=" << s.healthy
       << " lambda_nm=" << s.field.protocol.lambda_nm
       << " power_w=" << s.field.protocol.P_peak
       << " tp_s=" << s.field.protocol.t_p << " dt_s=" << s.field.protocol.delta_t
       << " tend_s=" << s.field.protocol.t_end << " g=" << s.field.inner.g
       << " gamma_r=" << s.field.gamma_r << " r_f_m=" << s.field.protocol.r_f
       << " r_i_m=" << s.field.geometry.r_i << " ell_m=" << s.field.geometry.ell
       << " L_m=" << s.field.geometry.L;
    return os.str();
}

}  // namespace ablation::scenario
