#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ablation/errors.hpp"

namespace ablation::params {

// Everything below is stored in SI (1/m, kg/m^3, J/kg/K, W/m/K, kelvin,
// metres, seconds, watts). Unit conversions happen only when a parameter file
// is ingested or a table is printed.

inline constexpr double kSpeedOfLight = 3.0e8;       // m/s
inline constexpr double kReferenceWavelengthNm = 500.0;
inline constexpr double kWaterDensity = 1000.0;      // kg/m^3

// Optical constants of one tissue at one wavelength.
struct OpticalProperties {
    double mu_a = 0.0;  // absorption coefficient [1/m]
    double a = 0.0;     // scattering prefactor [1/m]
    double b = 0.0;     // scattering power [-]
    double g = 0.9;     // anisotropy [-]
    double n = 1.4;     // refractive index [-]

    void validate() const;
};

// mu'_s(lambda) = a (lambda/500nm)^-b
double reduced_scattering(const OpticalProperties& o, double lambda_nm);
// mu_s = mu'_s / (1-g)
double scattering(const OpticalProperties& o, double lambda_nm);
// mu_a / mu'_s
double absorption_scattering_ratio(const OpticalProperties& o, double lambda_nm);
// mu_t = mu_a + mu_s
double total_attenuation(const OpticalProperties& o, double lambda_nm);
// mu_tr = mu_a + mu'_s
double transport_attenuation(const OpticalProperties& o, double lambda_nm);
// D = 1 / (3 (mu_a + mu'_s))
double diffusion_coefficient(const OpticalProperties& o, double lambda_nm);
// mu_eff = sqrt(3 mu_a (mu_a + mu'_s))
double effective_attenuation(const OpticalProperties& o, double lambda_nm);
// light speed in the tissue, c/n
double light_speed(const OpticalProperties& o);
// zeta_in = (c/n)(D mu_t^2 - mu_a)  [1/s]
double zeta_in(const OpticalProperties& o, double lambda_nm);

struct ThermalProperties {
    double rho = 0.0;     // tissue density [kg/m^3]
    double omega0 = 0.0;  // initial blood perfusion [kg/m^3/s]

    double rho_w_over_rho() const { return kWaterDensity / rho; }
    // c_p = 1550 + 2800 rho_w/rho
    double c_p() const { return 1550.0 + 2800.0 * rho_w_over_rho(); }
    // k = 0.06 + 0.57 rho_w/rho
    double k() const { return 0.06 + 0.57 * rho_w_over_rho(); }
    void validate() const;
};

struct BloodConstants {
    double rho_b = 1060.0;   // [kg/m^3]
    double T_b = 311.15;     // blood temperature [K] (38 C)

    // Specific heat from the same water-ratio relationship as tissue.
    double c_b() const { return 1550.0 + 2800.0 * kWaterDensity / rho_b; }
};

// Volumetric flow w [1/s] with omega0 = rho_b * w.
double volumetric_flow(const ThermalProperties& t, const BloodConstants& blood);

// zeta(beta; t) = (rho c_p)^-1 (k (beta + mu_t^2) - c_b rho_b w (1 - t/t_crit))
double zeta_thermal(const ThermalProperties& t, const BloodConstants& blood,
                    double mu_t, double beta, double time, double t_crit);

// Clamped variant: zeta(beta;0) before t_p, zeta(beta;t) in [t_p, t_crit),
// zeta(beta;t_crit) afterwards.
double zeta1(const ThermalProperties& t, const BloodConstants& blood, double mu_t,
             double beta, double time, double t_p, double t_crit);

// zeta0 = zeta(0; 0)
double zeta0(const ThermalProperties& t, const BloodConstants& blood, double mu_t);

// One tissue entry of the registry: per-wavelength absorption plus the
// scattering law constants.
struct TissueOptics {
    std::string name;
    std::map<int, double> mu_a_by_nm;  // [1/m], keyed by wavelength in nm
    double a = 0.0;                    // [1/m]
    double b = 0.0;
    double g = 0.9;                    // configurable; the tables omit it
    double n = 1.4;

    OpticalProperties at(double lambda_nm) const;
    OpticalProperties at(double lambda_nm, double g_override) const;
};

struct LaserDefaults {
    double power_w = 5.0;
    double lambda_nm = 810.0;
    double t_p = 1e-12;
    double delta_t = 1e-11;  // 10 t_p
    double t_end = 1e-10;    // 10 pulses
};

struct GeometryDefaults {
    double r_f = 0.25e-3;
    double r_i = 1.0e-2;
    double ell = 5.0e-3;
    double L = 2.0e-2;
    std::optional<double> r_o;  // computed from the field when unset
};

// Immutable after load; freely shared across threads.
struct Registry {
    std::map<std::string, TissueOptics> optics;
    std::map<std::string, ThermalProperties> thermal;
    BloodConstants blood;
    LaserDefaults laser;
    GeometryDefaults geometry;
    double gamma_r = 0.5;

    const TissueOptics& optics_for(const std::string& name) const;
    const ThermalProperties& thermal_for(const std::string& name) const;
    bool has_optics(const std::string& name) const;

    // Healthy counterpart of a tumor tissue (breast_tumor -> breast_tissue).
    static std::string healthy_partner(const std::string& tumor_name);
};

// Registry preloaded with the bundled breast/prostate optical and thermal
// constants. Matches the installed data/ablation_params.txt file.
Registry builtin_registry();

// Flat key-value parameter file, '#' comments, keys like
//   tissue.breast_tumor.mu_a_per_cm.810 = 0.08
//   tissue.breast_tumor.a_per_mm = 2.07
//   blood.rho = 1060, laser.power_w = 5, geometry.r_f_m = 0.25e-3
Registry load_registry(std::istream& in);
Registry load_registry_file(const std::string& path);

// Serializes a registry in the same key-value format (used to regenerate the
// bundled file and to round-trip in tests).
void write_registry(std::ostream& out, const Registry& reg);

}  // namespace ablation::params
