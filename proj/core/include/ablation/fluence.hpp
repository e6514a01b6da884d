#pragma once

#include <vector>

#include "ablation/params.hpp"
#include "ablation/source.hpp"

namespace ablation::fluence {

// Relative tolerance below which |D mu_t^2 - mu_a| counts as the steady-state
// degeneracy (the mu_eff case), guarding the closed-form divisions.
inline constexpr double kDegeneracyTol = 1e-9;
// exp(zeta t) beyond this exponent is reported instead of evaluated.
inline constexpr double kOverflowExponent = 700.0;

// S_in = S(r_f, 0, 0) / (D mu_t^2 - mu_a), inner-tissue coefficients [W/m^2].
double s_in(const params::OpticalProperties& inner, const source::LaserProtocol& p);

// In-pulse transient core: phi_f(z, t) = S(r_f, z, 0)/(D mu_t^2 - mu_a)
// (exp[zeta_in t] - 1). Valid on 0 <= t <= t_p (the t_p value is the
// left limit of the deliberate jump at the pulse end).
double phi_in_pulse(const params::OpticalProperties& inner,
                    const source::LaserProtocol& p, double z, double t);

// beta1(zeta) = (zeta/nu + mu_a)/D - mu_t^2, inner tissue.
double beta1(const params::OpticalProperties& inner, double lambda_nm, double zeta);

// beta2(zeta) = (zeta/nu + mu_a_o)/D_o - mu_t_i^2 (defining relation).
double beta2(const params::OpticalProperties& inner,
             const params::OpticalProperties& outer, double lambda_nm, double zeta);
// The two displayed closed forms, kept separate so tests can cross-check them
// against the defining relation.
double beta2_display_zero(const params::OpticalProperties& inner,
                          const params::OpticalProperties& outer, double lambda_nm);
double beta2_display_zeta_in(const params::OpticalProperties& inner,
                             const params::OpticalProperties& outer, double lambda_nm);

enum class RadialKind { oscillatory, modified, logarithmic };

// Radial factor R(r) of a separated solution on one annulus.
//  oscillatory: R = c_primary J0(sqrt(-beta) r) + c_companion Y0(sqrt(-beta) r)
//  modified:    R = c_primary I0(sqrt(beta) r)  + c_companion K0(sqrt(beta) r)
//  logarithmic: R = anchor_value + c_companion log(r / anchor_radius)
struct RadialSolution {
    RadialKind kind = RadialKind::logarithmic;
    double beta = 0.0;
    double c_primary = 0.0;
    double c_companion = 0.0;
    double anchor_radius = 0.0;
    double anchor_value = 0.0;

    double value(double r) const;
    double derivative(double r) const;
};

// Annulus extension over [r_f, r_i] for beta1(zeta) < 0:
// continuity R1(r_f) = anchor and zero flux R1'(r_f) = 0 against the
// r-independent core.
RadialSolution radial_particular(const params::OpticalProperties& inner,
                                 double lambda_nm, double anchor_value, double r_f,
                                 double zeta = 0.0);

// beta1 = 0 (zeta = zeta_in) logarithmic extension, Robin-matched at r_i:
// R1(r) = anchor - b0 log(r/r_f), b0 = gamma_r/(gamma_r log(r_i/r_f) - 2D/r_i) anchor.
RadialSolution radial_general_log(double anchor_value, double r_f, double r_i,
                                  double diffusion, double gamma_r);

// Healthy-tissue extension past r_i: continuity of value and of D R' flux.
RadialSolution radial_outer(const RadialSolution& inner_solution,
                            const params::OpticalProperties& inner,
                            const params::OpticalProperties& outer, double lambda_nm,
                            double r_i, double zeta);

enum class EigenFamily { dirichlet, robin };
enum class AxialBranch { sinh_decay, sin_oscillatory, exp_decay };

struct SeriesTerm {
    double b = 0.0;     // radial eigenvalue [1/m]
    double zeta = 0.0;  // time rate [1/s]
    double c = 0.0;     // Fourier-Bessel coefficient [W/m^2]
    double eta = 0.0;   // axial parameter [1/m] past z = ell
    AxialBranch branch = AxialBranch::sinh_decay;
};

struct SeriesConfig {
    int term_count = 64;
    EigenFamily family = EigenFamily::dirichlet;
    double gamma_r = 0.5;
    // stop adding terms once |c_n| max|J0| < tail_cutoff |u0|
    double tail_cutoff = 1e-12;
};

// Inter-pulse Fourier-Bessel solution on the disk of radius `disk_radius`,
// u0 = phi_f(0, t_p).
struct SeriesSolution {
    double disk_radius = 0.0;
    double u0 = 0.0;
    double mu_t_inner = 0.0;
    EigenFamily family = EigenFamily::dirichlet;
    bool dirichlet_fallback = false;
    std::vector<SeriesTerm> terms;
    std::vector<int> growing_terms;  // indices with zeta_n >= 0 (diagnostic, kept)
    double l2_tail_bound = 0.0;      // upper bound on ||u0 - P_N u0||_{L2(r dr)}

    // sum c_n J0(b_n r) exp(zeta_n elapsed), elapsed measured from the gap start
    double radial_sum(double r, double elapsed) const;
    // radial_sum with the inner Beer-Lambert factor exp(-mu_t z), z <= ell
    double evaluate(double r, double z, double elapsed) const;
};

SeriesSolution interpulse_series(const params::OpticalProperties& inner,
                                 const params::OpticalProperties& outer,
                                 const source::LaserProtocol& p,
                                 const source::Geometry& geo, double disk_radius,
                                 const SeriesConfig& cfg);

// Z_n(z) for ell <= z <= L: continuity value exp(-mu_t_i ell) at z = ell,
// zero at z = L. Throws regime_error on a sin-branch resonance.
double axial_factor(const SeriesTerm& term, double mu_t_inner,
                    const source::Geometry& geo, double z);

struct FieldConfig {
    params::OpticalProperties inner;
    params::OpticalProperties outer;
    source::LaserProtocol protocol;
    source::Geometry geometry;
    double gamma_r = 0.5;
    int series_terms = 64;
    EigenFamily family = EigenFamily::dirichlet;
    // Optional extension beyond the closed-form recipe: reuse each gap's
    // terminal state as the next gap's initial amplitude instead of the same
    // u0 for every gap.
    bool chain_pulse_state = false;
};

// Piecewise-assembled fluence rate over the multidomain and pulse train.
// Immutable after construction; evaluation is pure and thread-safe.
class Field {
public:
    explicit Field(FieldConfig cfg);

    // phi(r, z, t); symmetric in z. During pulses the off-fiber region is
    // zero; t on a pulse-end boundary evaluates the in-pulse (left) value.
    double operator()(double r, double z, double t) const;

    double pulse_end_left_limit(double z) const;               // phi_f(z, t_p)
    double pulse_end_right_limit(double r, double z) const;    // series at s = 0

    const SeriesSolution& series() const { return series_; }
    double u0() const { return series_.u0; }
    double zeta_in() const { return zeta_in_; }
    double s_in() const { return s_in_; }
    // Robin-matched amplitude constant for the z > ell continuation, solved
    // in the disk-integrated sense at the gap start.
    double z_ell_constant() const { return z_ell_; }
    const FieldConfig& config() const { return cfg_; }

    // Outward march (steps of r_i/10) until |phi| stays below
    // threshold * max over a (z, t) probe grid.
    double computed_outer_radius(double threshold = 1e-6) const;

private:
    double in_pulse_value(double z, double local_t) const;
    double gap_value(double r, double z, double elapsed, int gap_index) const;
    double chained_u0(int gap_index) const;

    FieldConfig cfg_;
    double s_in_ = 0.0;
    double zeta_in_ = 0.0;
    double mu_t_inner_ = 0.0;
    SeriesSolution series_;
    double z_ell_ = 1.0;
    std::vector<double> chained_u0_;  // per gap, only when chain_pulse_state
};

}  // namespace ablation::fluence
