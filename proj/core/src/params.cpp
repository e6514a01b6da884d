#include "ablation/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace ablation::params {

namespace {

double pow_ratio(double lambda_nm, double b) {
    return std::pow(lambda_nm / kReferenceWavelengthNm, -b);
}

void require_lambda(double lambda_nm) {
    if (!(lambda_nm > 0.0))
        throw std::domain_error("wavelength must be positive, got " +
                                std::to_string(lambda_nm));
}

}  // namespace

void OpticalProperties::validate() const {
    if (mu_a < 0.0) throw config_error("optical mu_a must be >= 0");
    if (!(a > 0.0)) throw config_error("optical scattering prefactor a must be > 0");
    if (!(g >= 0.7 && g < 1.0))
        throw config_error("anisotropy g must lie in [0.7, 1), got " + std::to_string(g));
    if (!(n >= 1.0)) throw config_error("refractive index n must be >= 1");
}

void ThermalProperties::validate() const {
    if (!(rho > 0.0)) throw config_error("thermal rho must be > 0");
    if (omega0 < 0.0) throw config_error("thermal omega0 must be >= 0");
}

double reduced_scattering(const OpticalProperties& o, double lambda_nm) {
    require_lambda(lambda_nm);
    return o.a * pow_ratio(lambda_nm, o.b);
}

double scattering(const OpticalProperties& o, double lambda_nm) {
    if (o.g >= 1.0) throw std::domain_error("scattering: g must be < 1");
    return reduced_scattering(o, lambda_nm) / (1.0 - o.g);
}

double absorption_scattering_ratio(const OpticalProperties& o, double lambda_nm) {
    return o.mu_a / reduced_scattering(o, lambda_nm);
}

double total_attenuation(const OpticalProperties& o, double lambda_nm) {
    if (o.g >= 1.0) throw std::domain_error("total_attenuation: g must be < 1");
    return o.mu_a + scattering(o, lambda_nm);
}

double transport_attenuation(const OpticalProperties& o, double lambda_nm) {
    return o.mu_a + reduced_scattering(o, lambda_nm);
}

double diffusion_coefficient(const OpticalProperties& o, double lambda_nm) {
    return 1.0 / (3.0 * transport_attenuation(o, lambda_nm));
}

double effective_attenuation(const OpticalProperties& o, double lambda_nm) {
    return std::sqrt(3.0 * o.mu_a * transport_attenuation(o, lambda_nm));
}

double light_speed(const OpticalProperties& o) { return kSpeedOfLight / o.n; }

double zeta_in(const OpticalProperties& o, double lambda_nm) {
    const double mu_t = total_attenuation(o, lambda_nm);
    const double D = diffusion_coefficient(o, lambda_nm);
    return light_speed(o) * (D * mu_t * mu_t - o.mu_a);
}

double volumetric_flow(const ThermalProperties& t, const BloodConstants& blood) {
    return t.omega0 / blood.rho_b;
}

double zeta_thermal(const ThermalProperties& t, const BloodConstants& blood,
                    double mu_t, double beta, double time, double t_crit) {
    if (!(t_crit > 0.0)) throw std::domain_error("zeta_thermal: t_crit must be > 0");
    const double perfusion = blood.c_b() * t.omega0 * (1.0 - time / t_crit);
    return (t.k() * (beta + mu_t * mu_t) - perfusion) / (t.rho * t.c_p());
}

double zeta1(const ThermalProperties& t, const BloodConstants& blood, double mu_t,
             double beta, double time, double t_p, double t_crit) {
    if (time < t_p) return zeta_thermal(t, blood, mu_t, beta, 0.0, t_crit);
    if (time >= t_crit) return zeta_thermal(t, blood, mu_t, beta, t_crit, t_crit);
    return zeta_thermal(t, blood, mu_t, beta, time, t_crit);
}

double zeta0(const ThermalProperties& t, const BloodConstants& blood, double mu_t) {
    // zeta(0; 0); t_crit drops out at time 0.
    return (t.k() * mu_t * mu_t - blood.c_b() * t.omega0) / (t.rho * t.c_p());
}

OpticalProperties TissueOptics::at(double lambda_nm) const { return at(lambda_nm, g); }

OpticalProperties TissueOptics::at(double lambda_nm, double g_override) const {
    require_lambda(lambda_nm);
    const int key = static_cast<int>(std::lround(lambda_nm));
    auto it = mu_a_by_nm.find(key);
    if (it == mu_a_by_nm.end()) {
        std::string avail;
        for (const auto& [nm, v] : mu_a_by_nm) avail += " " + std::to_string(nm);
        throw config_error("tissue '" + name + "' has no mu_a at " +
                           std::to_string(key) + " nm; available:" + avail);
    }
    OpticalProperties o{it->second, a, b, g_override, n};
    o.validate();
    return o;
}

const TissueOptics& Registry::optics_for(const std::string& n) const {
    auto it = optics.find(n);
    if (it == optics.end()) throw config_error("unknown tissue '" + n + "'");
    return it->second;
}

const ThermalProperties& Registry::thermal_for(const std::string& n) const {
    auto it = thermal.find(n);
    if (it == thermal.end())
        throw config_error("no thermal parameters for tissue '" + n + "'");
    return it->second;
}

bool Registry::has_optics(const std::string& n) const { return optics.count(n) > 0; }

std::string Registry::healthy_partner(const std::string& tumor_name) {
    if (tumor_name == "breast_tumor") return "breast_tissue";
    if (tumor_name == "prostate_tumor") return "prostate_tissue";
    throw config_error("no healthy partner registered for '" + tumor_name + "'");
}

Registry builtin_registry() {
    Registry reg;
    auto add_optics = [&reg](const std::string& name, double mu810_cm, double mu980_cm,
                             double mu1064_cm, double a_mm, double b, double n) {
        TissueOptics t;
        t.name = name;
        t.mu_a_by_nm[810] = mu810_cm * 100.0;   // 1/cm -> 1/m
        t.mu_a_by_nm[980] = mu980_cm * 100.0;
        t.mu_a_by_nm[1064] = mu1064_cm * 100.0;
        t.a = a_mm * 1000.0;                    // 1/mm -> 1/m
        t.b = b;
        t.n = n;
        reg.optics[name] = t;
    };
    add_optics("breast_tumor", 0.08, 0.07, 0.06, 2.07, 1.487, 1.4);
    add_optics("prostate_tumor", 0.12, 0.11, 0.10, 3.36, 1.712, 1.4);
    add_optics("breast_tissue", 0.17, 0.20, 0.30, 1.68, 1.055, 1.35);
    add_optics("prostate_tissue", 0.60, 0.50, 0.40, 3.01, 1.549, 1.37);

    reg.thermal["breast_tumor"] = {1000.0, 0.5};
    reg.thermal["prostate_tumor"] = {999.0, 0.416};
    reg.thermal["gland"] = {1041.0, 0.54};
    reg.thermal["fatty_tissue"] = {920.0, 0.32};
    // The bundled tables give no thermal row for healthy prostate; the fatty
    // values are reused for the healthy side of both pairs.
    reg.thermal["breast_tissue"] = reg.thermal.at("fatty_tissue");
    reg.thermal["prostate_tissue"] = reg.thermal.at("fatty_tissue");

    return reg;
}

namespace {

struct KeyValue {
    std::string key;
    double value;
};

std::vector<KeyValue> parse_lines(std::istream& in) {
    std::vector<KeyValue> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw config_error("parameter file line " + std::to_string(lineno) +
                                   ": expected 'key = value'");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            std::size_t used = 0;
            const double v = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            out.push_back({key, v});
        } catch (const std::exception&) {
            throw config_error("parameter file line " + std::to_string(lineno) +
                               ": bad numeric value '" + val + "'");
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

}  // namespace

Registry load_registry(std::istream& in) {
    Registry reg;  // starts empty; callers merge onto builtin themselves if wanted
    reg.optics.clear();
    reg.thermal.clear();

    for (const auto& [key, value] : parse_lines(in)) {
        const auto parts = split(key, '.');
        if (parts.empty()) throw config_error("empty key in parameter file");

        if (parts[0] == "tissue" && parts.size() >= 3) {
            const std::string& name = parts[1];
            const std::string& field = parts[2];
            if (field == "rho") {
                reg.thermal[name].rho = value;
                continue;
            }
            if (field == "omega0") {
                reg.thermal[name].omega0 = value;
                continue;
            }
            // optical fields; thermal-only tissues never enter reg.optics
            auto& t = reg.optics[name];
            if (t.name.empty()) t.name = name;
            if (field == "mu_a_per_cm" && parts.size() == 4) {
                t.mu_a_by_nm[std::stoi(parts[3])] = value * 100.0;
            } else if (field == "mu_a_per_mm" && parts.size() == 4) {
                t.mu_a_by_nm[std::stoi(parts[3])] = value * 1000.0;
            } else if (field == "mu_a_per_m" && parts.size() == 4) {
                t.mu_a_by_nm[std::stoi(parts[3])] = value;
            } else if (field == "a_per_mm") {
                t.a = value * 1000.0;
            } else if (field == "a_per_cm") {
                t.a = value * 100.0;
            } else if (field == "a_per_m") {
                t.a = value;
            } else if (field == "b") {
                t.b = value;
            } else if (field == "g") {
                t.g = value;
            } else if (field == "n") {
                t.n = value;
            } else {
                throw config_error("unknown tissue field '" + field + "'");
            }
        } else if (parts[0] == "blood" && parts.size() == 2) {
            if (parts[1] == "rho") reg.blood.rho_b = value;
            else if (parts[1] == "T_b_kelvin") reg.blood.T_b = value;
            else if (parts[1] == "T_b_celsius") reg.blood.T_b = value + 273.15;
            else throw config_error("unknown blood field '" + parts[1] + "'");
        } else if (parts[0] == "laser" && parts.size() == 2) {
            if (parts[1] == "power_w") reg.laser.power_w = value;
            else if (parts[1] == "lambda_nm") reg.laser.lambda_nm = value;
            else if (parts[1] == "tp_s") reg.laser.t_p = value;
            else if (parts[1] == "dt_s") reg.laser.delta_t = value;
            else if (parts[1] == "tend_s") reg.laser.t_end = value;
            else throw config_error("unknown laser field '" + parts[1] + "'");
        } else if (parts[0] == "geometry" && parts.size() == 2) {
            if (parts[1] == "r_f_m") reg.geometry.r_f = value;
            else if (parts[1] == "r_i_m") reg.geometry.r_i = value;
            else if (parts[1] == "ell_m") reg.geometry.ell = value;
            else if (parts[1] == "L_m") reg.geometry.L = value;
            else if (parts[1] == "r_o_m") reg.geometry.r_o = value;
            else throw config_error("unknown geometry field '" + parts[1] + "'");
        } else if (parts[0] == "gamma_r" && parts.size() == 1) {
            reg.gamma_r = value;
        } else {
            throw config_error("unknown parameter key '" + key + "'");
        }
    }

    for (auto& [name, t] : reg.optics) {
        if (t.mu_a_by_nm.empty())
            throw config_error("tissue '" + name + "' has no absorption entries");
        if (!(t.a > 0.0))
            throw config_error("tissue '" + name + "' has no scattering prefactor");
    }
    for (auto& [name, t] : reg.thermal) t.validate();
    return reg;
}

Registry load_registry_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open parameter file '" + path + "'");
    return load_registry(in);
}

void write_registry(std::ostream& out, const Registry& reg) {
    out << std::setprecision(17);
    for (const auto& [name, t] : reg.optics) {
        for (const auto& [nm, mu] : t.mu_a_by_nm)
            out << "tissue." << name << ".mu_a_per_cm." << nm << " = " << mu / 100.0 << "\n";
        out << "tissue." << name << ".a_per_mm = " << t.a / 1000.0 << "\n";
        out << "tissue." << name << ".b = " << t.b << "\n";
        out << "tissue." << name << ".g = " << t.g << "\n";
        out << "tissue." << name << ".n = " << t.n << "\n";
    }
    for (const auto& [name, t] : reg.thermal) {
        out << "tissue." << name << ".rho = " << t.rho << "\n";
        out << "tissue." << name << ".omega0 = " << t.omega0 << "\n";
    }
    out << "blood.rho = " << reg.blood.rho_b << "\n";
    out << "blood.T_b_kelvin = " << reg.blood.T_b << "\n";
    out << "laser.power_w = " << reg.laser.power_w << "\n";
    out << "laser.lambda_nm = " << reg.laser.lambda_nm << "\n";
    out << "laser.tp_s = " << reg.laser.t_p << "\n";
    out << "laser.dt_s = " << reg.laser.delta_t << "\n";
    out << "laser.tend_s = " << reg.laser.t_end << "\n";
    out << "geometry.r_f_m = " << reg.geometry.r_f << "\n";
    out << "geometry.r_i_m = " << reg.geometry.r_i << "\n";
    out << "geometry.ell_m = " << reg.geometry.ell << "\n";
    out << "geometry.L_m = " << reg.geometry.L << "\n";
    if (reg.geometry.r_o) out << "geometry.r_o_m = " << *reg.geometry.r_o << "\n";
    out << "gamma_r = " << reg.gamma_r << "\n";
}

}  // namespace ablation::params
