#include "ablation/fluence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ablation/specfun.hpp"

namespace ablation::fluence {

namespace {

namespace sf = ablation::specfun;

constexpr double kPi = 3.14159265358979323846;

// D mu_t^2 - mu_a with the degeneracy guard shared by s_in / phi_in_pulse.
double growth_denominator(const params::OpticalProperties& o, double lambda_nm) {
    const double mu_t = params::total_attenuation(o, lambda_nm);
    const double D = params::diffusion_coefficient(o, lambda_nm);
    const double denom = D * mu_t * mu_t - o.mu_a;
    if (std::abs(denom) < kDegeneracyTol * std::max(D * mu_t * mu_t, o.mu_a))
        throw degeneracy_error(
            "D mu_t^2 - mu_a is degenerate (steady-state mu_eff case); |denom| = " +
            std::to_string(std::abs(denom)));
    return denom;
}

double guarded_exp_minus_one(double exponent) {
    if (exponent > kOverflowExponent)
        throw overflow_regime_error(
            "exp(zeta_in t) overflows: exponent " + std::to_string(exponent), exponent);
    return std::expm1(exponent);
}

}  // namespace

double s_in(const params::OpticalProperties& inner, const source::LaserProtocol& p) {
    const double denom = growth_denominator(inner, p.lambda_nm);
    const double S0 = source::scattered_source(inner, p, p.r_f, 0.0, 0.0);
    return S0 / denom;
}

double phi_in_pulse(const params::OpticalProperties& inner,
                    const source::LaserProtocol& p, double z, double t) {
    if (t < 0.0 || t > p.t_p)
        throw std::domain_error("phi_in_pulse: t must lie in [0, t_p]");
    if (t == 0.0) return 0.0;
    const double zeta = params::zeta_in(inner, p.lambda_nm);
    const double mu_t = params::total_attenuation(inner, p.lambda_nm);
    const double growth = guarded_exp_minus_one(zeta * t);
    return s_in(inner, p) * std::exp(-mu_t * std::abs(z)) * growth;
}

double beta1(const params::OpticalProperties& inner, double lambda_nm, double zeta) {
    const double nu = params::light_speed(inner);
    const double D = params::diffusion_coefficient(inner, lambda_nm);
    const double mu_t = params::total_attenuation(inner, lambda_nm);
    return (zeta / nu + inner.mu_a) / D - mu_t * mu_t;
}

double beta2(const params::OpticalProperties& inner,
             const params::OpticalProperties& outer, double lambda_nm, double zeta) {
    const double nu = params::light_speed(inner);
    const double D_o = params::diffusion_coefficient(outer, lambda_nm);
    const double mu_t_i = params::total_attenuation(inner, lambda_nm);
    return (zeta / nu + outer.mu_a) / D_o - mu_t_i * mu_t_i;
}

double beta2_display_zero(const params::OpticalProperties& inner,
                          const params::OpticalProperties& outer, double lambda_nm) {
    const double D_o = params::diffusion_coefficient(outer, lambda_nm);
    const double mu_t_i = params::total_attenuation(inner, lambda_nm);
    return outer.mu_a / D_o - mu_t_i * mu_t_i;
}

double beta2_display_zeta_in(const params::OpticalProperties& inner,
                             const params::OpticalProperties& outer, double lambda_nm) {
    const double mu_tr_i = params::transport_attenuation(inner, lambda_nm);
    const double mu_tr_o = params::transport_attenuation(outer, lambda_nm);
    const double mu_t_i = params::total_attenuation(inner, lambda_nm);
    const double D_o = params::diffusion_coefficient(outer, lambda_nm);
    return (mu_tr_o / mu_tr_i - 1.0) * mu_t_i * mu_t_i - (inner.mu_a - outer.mu_a) / D_o;
}

double RadialSolution::value(double r) const {
    switch (kind) {
        case RadialKind::oscillatory: {
            const double x = std::sqrt(-beta) * r;
            return c_primary * sf::j0(x) + c_companion * sf::y0(x);
        }
        case RadialKind::modified: {
            const double x = std::sqrt(beta) * r;
            return c_primary * sf::i0(x) + c_companion * sf::k0(x);
        }
        case RadialKind::logarithmic:
            return anchor_value + c_companion * std::log(r / anchor_radius);
    }
    return 0.0;
}

double RadialSolution::derivative(double r) const {
    switch (kind) {
        case RadialKind::oscillatory: {
            const double s = std::sqrt(-beta);
            const double x = s * r;
            return -s * (c_primary * sf::j1(x) + c_companion * sf::y1(x));
        }
        case RadialKind::modified: {
            const double s = std::sqrt(beta);
            const double x = s * r;
            return s * (c_primary * sf::i1(x) - c_companion * sf::k1(x));
        }
        case RadialKind::logarithmic:
            return c_companion / r;
    }
    return 0.0;
}

RadialSolution radial_particular(const params::OpticalProperties& inner,
                                 double lambda_nm, double anchor_value, double r_f,
                                 double zeta) {
    const double b1 = beta1(inner, lambda_nm, zeta);
    if (!(b1 < 0.0))
        throw std::domain_error("radial_particular requires beta1(zeta) < 0, got " +
                                std::to_string(b1));
    const double s = std::sqrt(-b1);
    const double x_f = s * r_f;
    if (x_f < 1e-12)
        throw degeneracy_error("radial_particular: sqrt(|beta1|) r_f = " +
                               std::to_string(x_f) + " is in the logarithmic regime");
    RadialSolution sol;
    sol.kind = RadialKind::oscillatory;
    sol.beta = b1;
    sol.anchor_radius = r_f;
    sol.anchor_value = anchor_value;
    // Zero flux at r_f via the Wronskian: C1 = -(pi/2) x_f R(r_f) Y1(x_f).
    sol.c_primary = -0.5 * kPi * x_f * anchor_value * sf::y1(x_f);
    sol.c_companion = (anchor_value - sol.c_primary * sf::j0(x_f)) / sf::y0(x_f);
    return sol;
}

RadialSolution radial_general_log(double anchor_value, double r_f, double r_i,
                                  double diffusion, double gamma_r) {
    if (!(r_i > r_f && r_f > 0.0))
        throw std::domain_error("radial_general_log requires 0 < r_f < r_i");
    const double lg = std::log(r_i / r_f);
    const double denom = gamma_r * lg - 2.0 * diffusion / r_i;
    const double scale = std::max(std::abs(gamma_r * lg), 2.0 * diffusion / r_i);
    if (std::abs(denom) < 1e-12 * scale) {
        const double critical = (2.0 * diffusion / r_i) / lg;
        throw degeneracy_error(
            "radial_general_log: singular Robin denominator; critical gamma_r = " +
            std::to_string(critical));
    }
    RadialSolution sol;
    sol.kind = RadialKind::logarithmic;
    sol.beta = 0.0;
    sol.anchor_radius = r_f;
    sol.anchor_value = anchor_value;
    sol.c_companion = -gamma_r / denom * anchor_value;  // -b0
    return sol;
}

RadialSolution radial_outer(const RadialSolution& inner_solution,
                            const params::OpticalProperties& inner,
                            const params::OpticalProperties& outer, double lambda_nm,
                            double r_i, double zeta) {
    const double b2 = beta2(inner, outer, lambda_nm, zeta);
    const double D_i = params::diffusion_coefficient(inner, lambda_nm);
    const double D_o = params::diffusion_coefficient(outer, lambda_nm);
    const double R1 = inner_solution.value(r_i);
    const double dR1 = inner_solution.derivative(r_i);
    const double flux_ratio = D_i / D_o;

    RadialSolution sol;
    sol.beta = b2;
    sol.anchor_radius = r_i;
    sol.anchor_value = R1;
    if (b2 < 0.0) {
        const double s = std::sqrt(-b2);
        const double x_i = s * r_i;
        sol.kind = RadialKind::oscillatory;
        sol.c_primary =
            -0.5 * kPi * r_i * (flux_ratio * dR1 * sf::y0(x_i) + s * R1 * sf::y1(x_i));
        sol.c_companion = (R1 - sol.c_primary * sf::j0(x_i)) / sf::y0(x_i);
    } else if (b2 > 0.0) {
        const double s = std::sqrt(b2);
        const double x_i = s * r_i;
        sol.kind = RadialKind::modified;
        sol.c_primary = r_i * (flux_ratio * dR1 * sf::k0(x_i) + s * R1 * sf::k1(x_i));
        sol.c_companion = (R1 - sol.c_primary * sf::i0(x_i)) / sf::k0(x_i);
    } else {
        sol.kind = RadialKind::logarithmic;
        sol.c_companion = flux_ratio * dR1 * r_i;
    }
    return sol;
}

SeriesSolution interpulse_series(const params::OpticalProperties& inner,
                                 const params::OpticalProperties& outer,
                                 const source::LaserProtocol& p,
                                 const source::Geometry& geo, double disk_radius,
                                 const SeriesConfig& cfg) {
    if (cfg.term_count < 1)
        throw std::domain_error("interpulse_series: term_count must be >= 1");
    if (!(disk_radius > 0.0))
        throw std::domain_error("interpulse_series: disk radius must be > 0");

    const double lambda = p.lambda_nm;
    const double nu = params::light_speed(inner);
    const double D_i = params::diffusion_coefficient(inner, lambda);
    const double D_o = params::diffusion_coefficient(outer, lambda);
    const double mu_t_i = params::total_attenuation(inner, lambda);
    const double zi = params::zeta_in(inner, lambda);

    SeriesSolution sol;
    sol.disk_radius = disk_radius;
    sol.mu_t_inner = mu_t_i;
    sol.family = cfg.family;
    sol.u0 = s_in(inner, p) * guarded_exp_minus_one(zi * p.t_p);

    std::vector<double> eigen;
    if (cfg.family == EigenFamily::dirichlet) {
        eigen = sf::j0_roots(cfg.term_count);
        for (double& b : eigen) b /= disk_radius;
    } else {
        auto robin = sf::robin_eigenvalues(disk_radius, D_i, cfg.gamma_r, cfg.term_count);
        eigen = robin.roots;
        sol.dirichlet_fallback = robin.dirichlet_fallback;
    }

    const double a = disk_radius;
    sol.terms.reserve(eigen.size());
    for (std::size_t n = 0; n < eigen.size(); ++n) {
        SeriesTerm term;
        term.b = eigen[n];
        const double ba = term.b * a;
        const double j0a = sf::j0(ba);
        const double j1a = sf::j1(ba);
        term.c = sol.u0 * (2.0 / ba) * j1a / (j0a * j0a + j1a * j1a);
        // compatibility relation with eta = -mu_t, beta_n = -b_n^2
        term.zeta = nu * (D_i * (mu_t_i * mu_t_i - term.b * term.b) - inner.mu_a);
        // axial continuation parameter from the outer tissue, same zeta_n, beta_n
        const double eta_sq = (term.zeta / nu + outer.mu_a) / D_o + term.b * term.b;
        if (eta_sq > 0.0) {
            term.eta = std::sqrt(eta_sq);
            // past sinh's overflow range the ratio collapses to a pure exponential
            term.branch = term.eta * (geo.L - geo.ell) > 350.0 ? AxialBranch::exp_decay
                                                               : AxialBranch::sinh_decay;
        } else {
            term.branch = AxialBranch::sin_oscillatory;
            term.eta = std::sqrt(-eta_sq);
            const double arg = term.eta * (geo.L - geo.ell);
            if (std::abs(std::sin(arg)) < 1e-12)
                throw regime_error("axial resonance: sin(eta_n (L-ell)) vanishes at n = " +
                                   std::to_string(n + 1));
        }
        if (term.zeta >= 0.0) sol.growing_terms.push_back(static_cast<int>(n));
        sol.terms.push_back(term);
        if (std::abs(term.c) < cfg.tail_cutoff * std::abs(sol.u0) &&
            n + 1 >= 4)  // coefficient tail cut-off (rarely reached: c_n ~ n^-1/2)
            break;
    }

    // L2 tail bound: continue the closed-form coefficients well past the
    // truncation, then bound the remainder by the 2 u0^2 / b_n^2 envelope.
    const std::size_t N = sol.terms.size();
    const std::size_t M = std::max<std::size_t>(4 * N, 512);
    std::vector<double> ext;
    if (cfg.family == EigenFamily::dirichlet) {
        ext = sf::j0_roots(static_cast<int>(M));
        for (double& b : ext) b /= a;
    } else {
        ext = sf::robin_eigenvalues(a, D_i, cfg.gamma_r, static_cast<int>(M)).roots;
    }
    double tail_sq = 0.0;
    for (std::size_t n = N; n < ext.size(); ++n) {
        const double ba = ext[n] * a;
        const double j0a = sf::j0(ba);
        const double j1a = sf::j1(ba);
        const double cn = sol.u0 * (2.0 / ba) * j1a / (j0a * j0a + j1a * j1a);
        tail_sq += cn * cn * 0.5 * a * a * (j0a * j0a + j1a * j1a);
    }
    // remainder past M: terms <= 2 u0^2 / b_n^2 with b_n >= (n-1) pi / a
    tail_sq += 2.0 * sol.u0 * sol.u0 * a * a / (kPi * kPi * (M - 1.0));
    sol.l2_tail_bound = std::sqrt(tail_sq);
    return sol;
}

double SeriesSolution::radial_sum(double r, double elapsed) const {
    double sum = 0.0;
    for (const auto& t : terms)
        sum += t.c * sf::j0(t.b * r) * std::exp(t.zeta * elapsed);
    return sum;
}

double SeriesSolution::evaluate(double r, double z, double elapsed) const {
    return radial_sum(r, elapsed) * std::exp(-mu_t_inner * std::abs(z));
}

double axial_factor(const SeriesTerm& term, double mu_t_inner,
                    const source::Geometry& geo, double z) {
    const double scale = std::exp(-mu_t_inner * geo.ell);
    const double span = geo.L - geo.ell;
    if (term.branch == AxialBranch::exp_decay)
        return scale * std::exp(term.eta * (geo.ell - z));
    if (term.branch == AxialBranch::sinh_decay) {
        const double num = std::sinh(term.eta * (geo.L - z));
        const double den = std::sinh(term.eta * span);
        return scale * num / den;
    }
    const double den = std::sin(term.eta * span);
    if (std::abs(den) < 1e-12)
        throw regime_error("axial resonance: sin(eta (L-ell)) vanished");
    return scale * std::sin(term.eta * (geo.L - z)) / den;
}

Field::Field(FieldConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.protocol.validate();
    cfg_.geometry.validate();
    const double lambda = cfg_.protocol.lambda_nm;
    s_in_ = fluence::s_in(cfg_.inner, cfg_.protocol);
    zeta_in_ = params::zeta_in(cfg_.inner, lambda);
    mu_t_inner_ = params::total_attenuation(cfg_.inner, lambda);

    SeriesConfig scfg;
    scfg.term_count = cfg_.series_terms;
    scfg.family = cfg_.family;
    scfg.gamma_r = cfg_.gamma_r;
    series_ = interpulse_series(cfg_.inner, cfg_.outer, cfg_.protocol, cfg_.geometry,
                                cfg_.geometry.r_f, scfg);

    // Robin amplitude for the z > ell continuation, matched in the
    // disk-integrated sense at the gap start (s = 0):
    //   Z_ell sum_n c_n (a/b_n) J1(b_n a) [-D_o Z_n'(ell) + gamma_r Z_n(ell)]
    //     = -int_0^a S1(r, ell) r dr
    const double D_o = params::diffusion_coefficient(cfg_.outer, lambda);
    const double a = series_.disk_radius;
    const double ell = cfg_.geometry.ell;
    const double L = cfg_.geometry.L;
    const double z_scale = std::exp(-mu_t_inner_ * ell);
    double lhs = 0.0;
    for (const auto& t : series_.terms) {
        double dZ;  // Z_n'(ell)
        if (t.branch == AxialBranch::exp_decay) {
            dZ = -t.eta * z_scale;
        } else if (t.branch == AxialBranch::sinh_decay) {
            dZ = -t.eta * z_scale * std::cosh(t.eta * (L - ell)) /
                 std::sinh(t.eta * (L - ell));
        } else {
            dZ = -t.eta * z_scale * std::cos(t.eta * (L - ell)) /
                 std::sin(t.eta * (L - ell));
        }
        const double radial_int = (a / t.b) * sf::j1(t.b * a);
        lhs += t.c * radial_int * (-D_o * dZ + cfg_.gamma_r * z_scale);
    }
    const double s1s = source::s1_over_s(cfg_.inner, lambda);
    const double coeff = source::source_coefficient(cfg_.inner, lambda);
    const double rhs =
        -s1s * coeff * cfg_.protocol.P_peak * std::exp(-mu_t_inner_ * ell) / (2.0 * kPi);
    z_ell_ = lhs != 0.0 ? rhs / lhs : 1.0;

    if (cfg_.chain_pulse_state) {
        const int N = cfg_.protocol.pulse_count();
        chained_u0_.resize(N, series_.u0);
        const double period = cfg_.protocol.t_p + cfg_.protocol.delta_t;
        // unit-amplitude decay of the series over one full period at r = 0
        double decay0 = 0.0;
        for (const auto& t : series_.terms)
            decay0 += t.c / series_.u0 * std::exp(t.zeta * period);
        for (int j = 1; j < N; ++j)
            chained_u0_[j] = series_.u0 + decay0 * chained_u0_[j - 1];
    }
}

double Field::pulse_end_left_limit(double z) const {
    return phi_in_pulse(cfg_.inner, cfg_.protocol, z, cfg_.protocol.t_p);
}

double Field::pulse_end_right_limit(double r, double z) const {
    if (r > cfg_.protocol.r_f) return 0.0;
    return series_.evaluate(r, z, 0.0);
}

double Field::in_pulse_value(double z, double local_t) const {
    return s_in_ * std::exp(-mu_t_inner_ * z) * guarded_exp_minus_one(zeta_in_ * local_t);
}

double Field::chained_u0(int gap_index) const {
    if (!cfg_.chain_pulse_state || chained_u0_.empty()) return series_.u0;
    const int j = std::clamp(gap_index, 0, static_cast<int>(chained_u0_.size()) - 1);
    return chained_u0_[j];
}

double Field::gap_value(double r, double z, double elapsed, int gap_index) const {
    if (r > cfg_.protocol.r_f) return 0.0;
    const double amp = chained_u0(gap_index) / series_.u0;
    if (z <= cfg_.geometry.ell) return amp * series_.evaluate(r, z, elapsed);
    if (z > cfg_.geometry.L) return 0.0;
    // axial continuation beyond the tumor half-length
    double sum = 0.0;
    for (const auto& t : series_.terms)
        sum += t.c * sf::j0(t.b * r) * axial_factor(t, mu_t_inner_, cfg_.geometry, z) *
               std::exp(t.zeta * elapsed);
    return amp * z_ell_ * sum;
}

double Field::operator()(double r, double z, double t) const {
    if (r < 0.0) throw std::domain_error("phi: r must be >= 0");
    if (t < 0.0) throw std::domain_error("phi: t must be >= 0");
    const double az = std::abs(z);  // mirror symmetry about the tip plane
    if (r > cfg_.geometry.r_o || az > cfg_.geometry.L)
        throw std::domain_error("phi: (r, z) outside the multidomain");
    if (t == 0.0) return 0.0;

    const double period = cfg_.protocol.t_p + cfg_.protocol.delta_t;
    int j = static_cast<int>(std::floor(t / period));
    const int N = cfg_.protocol.pulse_count();
    if (j >= N) j = N - 1;  // past t_end: the last gap keeps decaying
    const double local = t - j * period;

    if (local <= cfg_.protocol.t_p && j < N) {
        // pulse phase: nonzero only on the fiber disk inside the tumor
        if (r > cfg_.protocol.r_f || az > cfg_.geometry.ell) {
            if (!cfg_.chain_pulse_state || j == 0 || r > cfg_.protocol.r_f) return 0.0;
            // chained extension: previous gap's state keeps decaying under the pulse
            return gap_value(r, az, period - cfg_.protocol.t_p + local, j - 1);
        }
        double value = in_pulse_value(az, local);
        if (cfg_.chain_pulse_state && j > 0)
            value += gap_value(r, az, period - cfg_.protocol.t_p + local, j - 1);
        return value;
    }
    return gap_value(r, az, local - cfg_.protocol.t_p, j);
}

double Field::computed_outer_radius(double threshold) const {
    // Outward march over the assembled field: at each radius take the max
    // over a (z, t) probe grid and stop once it stays below threshold times
    // the global peak. The march starts past the tumor radius, the smallest
    // admissible outer radius. (The annulus/outer extension machinery,
    // exposed via radial_outer, generally has no vanishing radius: its I0
    // admixture grows outward; the assembled field follows the first-pulse
    // case instead.)
    const double peak = std::abs(series_.u0);
    const double step = cfg_.geometry.r_i / 10.0;
    const double cap = 20.0 * cfg_.geometry.r_i;
    const double t_samples[] = {0.5 * cfg_.protocol.t_p, cfg_.protocol.t_p,
                                cfg_.protocol.t_p + 0.5 * cfg_.protocol.delta_t};
    const double z_samples[] = {0.0, 0.25 * cfg_.geometry.ell, 0.5 * cfg_.geometry.ell,
                                cfg_.geometry.ell};
    double candidate = -1.0;
    for (double r = cfg_.geometry.r_i + step; r <= cap; r += step) {
        double local_max = 0.0;
        for (double t : t_samples)
            for (double z : z_samples) {
                if (r > cfg_.geometry.r_o) continue;
                local_max = std::max(local_max, std::abs((*this)(r, z, t)));
            }
        if (local_max < threshold * peak) {
            if (candidate < 0.0) candidate = r;
        } else {
            candidate = -1.0;  // rose back above threshold; keep marching
        }
    }
    if (candidate < 0.0)
        throw convergence_error(
            "fluence does not drop below threshold within 20 r_i");
    return candidate;
}

}  // namespace ablation::fluence
