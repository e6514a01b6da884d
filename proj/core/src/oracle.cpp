#include "ablation/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ablation::oracle {

namespace {

void require_on_face(double boundary, double spacing, double extent, const char* name) {
    if (boundary >= extent) return;  // outside the grid; nothing to align
    const double cells = boundary / spacing;
    if (std::abs(cells - std::lround(cells)) > 1e-6)
        throw config_error(std::string("grid: ") + name +
                           " does not land on a cell face (cells = " +
                           std::to_string(cells) + ")");
}

double face_harmonic(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return 2.0 * a * b / (a + b);
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

AxisymmetricGrid AxisymmetricGrid::make(const GridSpec& spec, const source::Geometry& geo) {
    if (spec.nr < 2 || spec.nz < 2) throw config_error("grid: need at least 2x2 cells");
    require_on_face(geo.r_f, spec.dr(), spec.r_max, "r_f");
    require_on_face(geo.r_i, spec.dr(), spec.r_max, "r_i");
    require_on_face(geo.ell, spec.dz(), spec.z_max, "ell");

    AxisymmetricGrid grid;
    grid.spec = spec;
    grid.geometry = geo;
    grid.region.resize(static_cast<std::size_t>(spec.nr) * spec.nz);
    for (int j = 0; j < spec.nz; ++j)
        for (int i = 0; i < spec.nr; ++i)
            grid.region[static_cast<std::size_t>(j) * spec.nr + i] =
                (grid.r_center(i) <= geo.r_i && grid.z_center(j) <= geo.ell) ? 0 : 1;
    return grid;
}

int AxisymmetricGrid::index_of(double r, double z) const {
    int i = static_cast<int>(r / spec.dr());
    int j = static_cast<int>(z / spec.dz());
    i = std::clamp(i, 0, spec.nr - 1);
    j = std::clamp(j, 0, spec.nz - 1);
    return j * spec.nr + i;
}

double FdResult::value_at(double r, double z) const {
    return field[grid.index_of(r, z)];
}

FieldProfile FdResult::to_profile(const std::string& unit) const {
    FieldProfile p;
    p.unit = unit;
    p.samples.reserve(field.size());
    for (int j = 0; j < grid.spec.nz; ++j) {
        for (int i = 0; i < grid.spec.nr; ++i) {
            FieldProfile::Sample s;
            s.r = grid.r_center(i);
            s.z = grid.z_center(j);
            s.t = time;
            s.value = field[static_cast<std::size_t>(j) * grid.spec.nr + i];
            s.region = grid.region_at(i, j) == 0 ? "tumor" : "healthy";
            p.samples.push_back(s);
        }
    }
    return p;
}

FdResult fd_radiative(const AxisymmetricGrid& grid, const RadiativeMedium& inner,
                      const RadiativeMedium& outer, const SpaceTimeFn& source,
                      double horizon, const FdOptions& options) {
    if (!(horizon > 0.0)) throw config_error("fd_radiative: horizon must be > 0");
    const int nr = grid.spec.nr, nz = grid.spec.nz;
    const double dr = grid.spec.dr(), dz = grid.spec.dz();

    auto med = [&](int i, int j) -> const RadiativeMedium& {
        return grid.region_at(i, j) == 0 ? inner : outer;
    };

    const double D_max = std::max(inner.D, outer.D);
    const double mu_max = std::max(inner.mu_a, outer.mu_a);
    const double nu_max = std::max(inner.nu, outer.nu);
    const double bound =
        1.0 / (nu_max * (2.0 * D_max * (1.0 / (dr * dr) + 1.0 / (dz * dz)) + mu_max));

    FdResult res;
    res.grid = grid;
    res.stability_bound = bound;
    long steps = static_cast<long>(std::ceil(horizon / (options.safety * bound)));
    res.dt = horizon / steps;
    res.steps = steps;
    res.field.assign(static_cast<std::size_t>(nr) * nz, 0.0);
    if (!options.initial.empty()) {
        if (options.initial.size() != res.field.size())
            throw config_error("fd_radiative: initial field size mismatch");
        res.field = options.initial;
    }

    std::vector<double> next(res.field.size(), 0.0);
    auto at = [&](const std::vector<double>& f, int i, int j) -> double {
        return f[static_cast<std::size_t>(j) * nr + i];
    };

    double t = 0.0;
    for (long step = 0; step < steps; ++step) {
        for (int j = 0; j < nz; ++j) {
            for (int i = 0; i < nr; ++i) {
                const auto& m = med(i, j);
                const double rc = grid.r_center(i);
                const double phi = at(res.field, i, j);

                // conservative radial part (1/r)(r D phi_r)_r
                double flux_rp = 0.0, flux_rm = 0.0;
                if (i + 1 < nr) {
                    const double Df = face_harmonic(m.D, med(i + 1, j).D);
                    flux_rp = (i + 1) * dr * Df * (at(res.field, i + 1, j) - phi) / dr;
                } else {
                    // Robin face: -2D phi_r + gamma phi = 0
                    const double denom = 2.0 * m.D - 0.5 * options.gamma_r * dr;
                    const double slope = denom != 0.0 ? options.gamma_r * phi / denom : 0.0;
                    flux_rp = nr * dr * m.D * slope;
                }
                if (i > 0) {
                    const double Df = face_harmonic(m.D, med(i - 1, j).D);
                    flux_rm = i * dr * Df * (phi - at(res.field, i - 1, j)) / dr;
                }  // inner face at r = 0 carries no flux (regularity)
                const double lap_r = (flux_rp - flux_rm) / (rc * dr);

                // axial part (D phi_z)_z with the z = 0 symmetry plane
                double flux_zp = 0.0, flux_zm = 0.0;
                if (j + 1 < nz) {
                    const double Df = face_harmonic(m.D, med(i, j + 1).D);
                    flux_zp = Df * (at(res.field, i, j + 1) - phi) / dz;
                } else {
                    // Robin face: -D phi_z + gamma phi = 0
                    const double denom = m.D - 0.5 * options.gamma_r * dz;
                    const double slope = denom != 0.0 ? options.gamma_r * phi / denom : 0.0;
                    flux_zp = m.D * slope;
                }
                if (j > 0) {
                    const double Df = face_harmonic(m.D, med(i, j - 1).D);
                    flux_zm = Df * (phi - at(res.field, i, j - 1)) / dz;
                }
                const double lap_z = (flux_zp - flux_zm) / dz;

                const double S = source(rc, grid.z_center(j), t);
                next[static_cast<std::size_t>(j) * nr + i] =
                    phi + res.dt * m.nu * (lap_r + lap_z - m.mu_a * phi + S);
            }
        }
        res.field.swap(next);
        t += res.dt;
        if (options.nan_check_every > 0 && step % options.nan_check_every == 0) {
            for (double v : res.field)
                if (!std::isfinite(v))
                    throw convergence_error("fd_radiative produced NaN/inf at step " +
                                            std::to_string(step));
        }
    }
    res.time = t;
    for (double v : res.field)
        if (!std::isfinite(v))
            throw convergence_error("fd_radiative produced NaN/inf at the final step");
    return res;
}

FdResult fd_bioheat(const AxisymmetricGrid& grid, const ThermalMedium& inner,
                    const ThermalMedium& outer, const SpaceTimeFn& q,
                    const std::function<double(double)>& perfusion_factor, double T_b,
                    double horizon, const FdOptions& options) {
    if (!(horizon > 0.0)) throw config_error("fd_bioheat: horizon must be > 0");
    const int nr = grid.spec.nr, nz = grid.spec.nz;
    const double dr = grid.spec.dr(), dz = grid.spec.dz();

    auto med = [&](int i, int j) -> const ThermalMedium& {
        return grid.region_at(i, j) == 0 ? inner : outer;
    };

    const double alpha_max =
        std::max(inner.k / inner.rho_cp, outer.k / outer.rho_cp);
    const double sink_max = std::max(inner.c_b * inner.omega0 / inner.rho_cp,
                                     outer.c_b * outer.omega0 / outer.rho_cp);
    const double bound =
        1.0 / (2.0 * alpha_max * (1.0 / (dr * dr) + 1.0 / (dz * dz)) + sink_max);

    FdResult res;
    res.grid = grid;
    res.stability_bound = bound;
    long steps = static_cast<long>(std::ceil(horizon / (options.safety * bound)));
    // resolve the source's own time structure as well
    steps = std::max<long>(steps, 200);
    res.dt = horizon / steps;
    res.steps = steps;
    res.field.assign(static_cast<std::size_t>(nr) * nz, T_b);
    if (!options.initial.empty()) {
        if (options.initial.size() != res.field.size())
            throw config_error("fd_bioheat: initial field size mismatch");
        res.field = options.initial;
    }

    std::vector<double> next(res.field.size(), T_b);
    auto at = [&](const std::vector<double>& f, int i, int j) -> double {
        return f[static_cast<std::size_t>(j) * nr + i];
    };

    double t = 0.0;
    for (long step = 0; step < steps; ++step) {
        const double wfac = perfusion_factor(t);
        for (int j = 0; j < nz; ++j) {
            for (int i = 0; i < nr; ++i) {
                const auto& m = med(i, j);
                const double rc = grid.r_center(i);
                const double T = at(res.field, i, j);

                double flux_rp = 0.0, flux_rm = 0.0;  // insulated outer faces
                if (i + 1 < nr) {
                    const double kf = face_harmonic(m.k, med(i + 1, j).k);
                    flux_rp = (i + 1) * dr * kf * (at(res.field, i + 1, j) - T) / dr;
                }
                if (i > 0) {
                    const double kf = face_harmonic(m.k, med(i - 1, j).k);
                    flux_rm = i * dr * kf * (T - at(res.field, i - 1, j)) / dr;
                }
                const double lap_r = (flux_rp - flux_rm) / (rc * dr);

                double flux_zp = 0.0, flux_zm = 0.0;
                if (j + 1 < nz) {
                    const double kf = face_harmonic(m.k, med(i, j + 1).k);
                    flux_zp = kf * (at(res.field, i, j + 1) - T) / dz;
                }
                if (j > 0) {
                    const double kf = face_harmonic(m.k, med(i, j - 1).k);
                    flux_zm = kf * (T - at(res.field, i, j - 1)) / dz;
                }
                const double lap_z = (flux_zp - flux_zm) / dz;

                const double sink = m.c_b * m.omega0 * wfac * (T - T_b);
                const double src = q(rc, grid.z_center(j), t);
                next[static_cast<std::size_t>(j) * nr + i] =
                    T + res.dt / m.rho_cp * (lap_r + lap_z - sink + src);
            }
        }
        res.field.swap(next);
        t += res.dt;
        if (options.nan_check_every > 0 && step % options.nan_check_every == 0) {
            for (double v : res.field)
                if (!std::isfinite(v))
                    throw convergence_error("fd_bioheat produced NaN/inf at step " +
                                            std::to_string(step));
        }
    }
    res.time = t;
    return res;
}

namespace {

template <class Operator>
ResidualReport run_residual(const Operator& op, const ResidualWindow& w, int levels) {
    ResidualReport report;
    for (int level = 0; level < levels; ++level) {
        const double refine = std::pow(2.0, level);
        const int nr = w.nr, nz = w.nz;  // fixed sample count, shrinking h
        const double h0 = std::min((w.r1 - w.r0) / (w.nr + 1), (w.z1 - w.z0) / (w.nz + 1));
        const double h = h0 / refine;
        double max_abs = 0.0, sum_sq = 0.0;
        long count = 0;
        for (int j = 1; j <= nz; ++j) {
            for (int i = 1; i <= nr; ++i) {
                const double r = w.r0 + (w.r1 - w.r0) * i / (nr + 1);
                const double z = w.z0 + (w.z1 - w.z0) * j / (nz + 1);
                const double res = op(r, z, w.t, h);
                max_abs = std::max(max_abs, std::abs(res));
                sum_sq += res * res;
                ++count;
            }
        }
        report.levels.push_back({h, max_abs, std::sqrt(sum_sq / count)});
    }
    std::vector<double> hs, maxs, l2s;
    for (const auto& l : report.levels) {
        hs.push_back(l.h);
        maxs.push_back(l.max_abs);
        l2s.push_back(l.l2);
    }
    report.fitted_order_max = loglog_slope(hs, maxs);
    report.fitted_order_l2 = loglog_slope(hs, l2s);
    return report;
}

}  // namespace

ResidualReport radiative_residual(const SpaceTimeFn& phi, const SpaceTimeFn& source,
                                  const RadiativeMedium& medium,
                                  const ResidualWindow& window, int levels,
                                  double dt_scale) {
    auto op = [&](double r, double z, double t, double h) {
        const double dt = dt_scale * h;
        const double c = phi(r, z, t);
        const double d_t = (phi(r, z, t + dt) - phi(r, z, t - dt)) / (2.0 * dt);
        const double d_rr = (phi(r + h, z, t) - 2.0 * c + phi(r - h, z, t)) / (h * h);
        const double d_r = (phi(r + h, z, t) - phi(r - h, z, t)) / (2.0 * h);
        const double d_zz = (phi(r, z + h, t) - 2.0 * c + phi(r, z - h, t)) / (h * h);
        return d_t / medium.nu - medium.D * (d_rr + d_r / r + d_zz) + medium.mu_a * c -
               source(r, z, t);
    };
    return run_residual(op, window, levels);
}

ResidualReport bioheat_residual(const SpaceTimeFn& temperature, const SpaceTimeFn& q,
                                const ThermalMedium& medium, double T_b,
                                const ResidualWindow& window, int levels,
                                double dt_scale) {
    auto op = [&](double r, double z, double t, double h) {
        const double dt = dt_scale * h;
        const double c = temperature(r, z, t);
        const double d_t =
            (temperature(r, z, t + dt) - temperature(r, z, t - dt)) / (2.0 * dt);
        const double d_rr =
            (temperature(r + h, z, t) - 2.0 * c + temperature(r - h, z, t)) / (h * h);
        const double d_r = (temperature(r + h, z, t) - temperature(r - h, z, t)) / (2.0 * h);
        const double d_zz =
            (temperature(r, z + h, t) - 2.0 * c + temperature(r, z - h, t)) / (h * h);
        return medium.rho_cp * d_t - medium.k * (d_rr + d_r / r + d_zz) +
               medium.c_b * medium.omega0 * (c - T_b) - q(r, z, t);
    };
    return run_residual(op, window, levels);
}

}  // namespace ablation::oracle
