#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ablation/field_profile.hpp"
#include "ablation/source.hpp"

namespace ablation::oracle {

// Independent explicit finite-difference solver of the axisymmetric
// radiative-diffusion and bioheat equations; the ground truth generator for
// the analytic cross-checks. Shares nothing with the closed-form code path
// beyond the source evaluators it is handed.

using SpaceTimeFn = std::function<double(double r, double z, double t)>;

struct GridSpec {
    int nr = 64;
    int nz = 64;
    double r_max = 1.0e-3;
    double z_max = 1.0e-3;

    double dr() const { return r_max / nr; }
    double dz() const { return z_max / nz; }
};

// Cell-centred axisymmetric grid on [0, r_max] x [0, z_max] with the z = 0
// symmetry plane of the tip. Region boundaries (r_f, r_i, ell) that fall
// inside the domain must land on cell faces.
struct AxisymmetricGrid {
    GridSpec spec;
    source::Geometry geometry;
    std::vector<std::uint8_t> region;  // nr*nz, 0 = tumor, 1 = healthy

    static AxisymmetricGrid make(const GridSpec& spec, const source::Geometry& geo);
    std::uint8_t region_at(int i, int j) const { return region[j * spec.nr + i]; }
    int index_of(double r, double z) const;  // nearest cell index
    double r_center(int i) const { return (i + 0.5) * spec.dr(); }
    double z_center(int j) const { return (j + 0.5) * spec.dz(); }
};

struct RadiativeMedium {
    double D = 0.0;     // [m]
    double mu_a = 0.0;  // [1/m]
    double nu = 0.0;    // light speed in tissue [m/s]
};

struct ThermalMedium {
    double rho_cp = 0.0;  // [J/m^3/K]
    double k = 0.0;       // [W/m/K]
    double c_b = 0.0;     // [J/kg/K]
    double omega0 = 0.0;  // [kg/m^3/s]
};

struct FdOptions {
    double gamma_r = 0.5;   // Robin coefficient on the outer faces (radiative)
    double safety = 0.4;    // dt = safety * stability bound
    int nan_check_every = 64;
    // Optional initial field (nr*nz); zeros / T_b when empty.
    std::vector<double> initial;
};

struct FdResult {
    AxisymmetricGrid grid;
    double time = 0.0;
    double dt = 0.0;              // step actually used (recorded)
    double stability_bound = 0.0; // the enforced explicit bound
    long steps = 0;
    std::vector<double> field;    // nr*nz cell-centred values

    double value_at(double r, double z) const;  // nearest cell
    FieldProfile to_profile(const std::string& unit) const;
};

// Explicit stepping of (1/nu) d_t phi = D Lap(phi) - mu_a phi + S with the
// cylindrical Laplacian, regularity at r = 0, symmetry at z = 0, Robin outer
// faces, zero initial data.
FdResult fd_radiative(const AxisymmetricGrid& grid, const RadiativeMedium& inner,
                      const RadiativeMedium& outer, const SpaceTimeFn& source,
                      double horizon, const FdOptions& options = {});

// Explicit stepping of rho c_p d_t T = div(k grad T) - c_b omega_b(t)(T - T_b) + q
// with insulated outer faces and T = T_b initial data. omega_b is a time
// function on top of each medium's omega0 scale (pass 1 for constant).
FdResult fd_bioheat(const AxisymmetricGrid& grid, const ThermalMedium& inner,
                    const ThermalMedium& outer, const SpaceTimeFn& q,
                    const std::function<double(double)>& perfusion_factor, double T_b,
                    double horizon, const FdOptions& options = {});

// Rectangular sample window for residual evaluation; must lie inside one
// smooth subregion (chi edges excluded from the fit by the caller).
struct ResidualWindow {
    double r0 = 0.0, r1 = 0.0;
    double z0 = 0.0, z1 = 0.0;
    double t = 0.0;
    int nr = 24, nz = 24;
};

struct ResidualLevel {
    double h = 0.0;
    double max_abs = 0.0;
    double l2 = 0.0;
};

struct ResidualReport {
    std::vector<ResidualLevel> levels;
    double fitted_order_max = 0.0;
    double fitted_order_l2 = 0.0;
};

// Applies the second-order discretization of the radiative equation (central
// differences in r, z and t, spacing h and dt_scale*h) to an analytic field
// over `levels` dyadic refinements and fits the convergence order.
ResidualReport radiative_residual(const SpaceTimeFn& phi, const SpaceTimeFn& source,
                                  const RadiativeMedium& medium,
                                  const ResidualWindow& window, int levels = 3,
                                  double dt_scale = 1e-10);

// Same machinery for the bioheat operator with constant perfusion factor.
ResidualReport bioheat_residual(const SpaceTimeFn& temperature, const SpaceTimeFn& q,
                                const ThermalMedium& medium, double T_b,
                                const ResidualWindow& window, int levels = 3,
                                double dt_scale = 1.0);

}  // namespace ablation::oracle
