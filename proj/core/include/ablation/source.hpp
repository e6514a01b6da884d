#pragma once

#include "ablation/errors.hpp"
#include "ablation/params.hpp"

namespace ablation::source {

// Pulse train: N pulses of width t_p separated by delta_t, with
// t_end = N t_p + (N-1) delta_t. N must come out a positive integer.
struct LaserProtocol {
    double P_peak = 5.0;      // [W]
    double lambda_nm = 810.0;
    double t_p = 1e-12;       // pulse width [s]
    double delta_t = 1e-11;   // pulse-to-pulse interval [s]
    double t_end = 1e-10;     // exposure duration [s]
    double r_f = 0.25e-3;     // fiber radius [m]

    int pulse_count() const;            // N = (t_end + delta_t)/(t_p + delta_t)
    double pulse_start(int j) const { return j * (t_p + delta_t); }
    // Pulse index whose [t_j, t_j + t_p] contains t (closed interval), or -1.
    int pulse_containing(double t) const;
    void validate() const;

    static LaserProtocol from_registry(const params::Registry& reg);
};

// Multidomain of the laser-tissue system: fiber radius r_f, tumor radius r_i,
// outer radius r_o, half active length ell, domain half-length L.
struct Geometry {
    double r_f = 0.25e-3;
    double r_i = 1.0e-2;
    double r_o = 2.0e-2;
    double ell = 5.0e-3;
    double L = 2.0e-2;

    void validate() const;
    static Geometry from_registry(const params::Registry& reg);
};

enum class Region { tumor, healthy };

// Tissue region containing (r, |z|). Points exactly on r = r_i or z = ell
// resolve to the tumor side (closed-interval convention).
Region region_at(const Geometry& geo, double r, double z);

// Planar irradiance E(r, t): P/(pi r_f^2) on the fiber disk during a pulse,
// zero otherwise. Both cut-offs are exact characteristic functions.
double irradiance(const LaserProtocol& p, double r, double t);

// mu_s (mu_t + g mu_a) / (mu_a + mu'_s)  [1/m]; S = coeff * E * exp(-mu_t z).
double source_coefficient(const params::OpticalProperties& o, double lambda_nm);

// Scattered-photon source for a single tissue, z measured from the tip.
double scattered_source(const params::OpticalProperties& o, const LaserProtocol& p,
                        double r, double z, double t);

// Region-dispatching variant: the tissue containing (r, |z|) provides the
// optical coefficients.
double scattered_source(const params::OpticalProperties& inner,
                        const params::OpticalProperties& outer, const Geometry& geo,
                        const LaserProtocol& p, double r, double z, double t);

// S1/S ratio g/(mu_t + g mu_a), independent of position.
double s1_over_s(const params::OpticalProperties& o, double lambda_nm);

// Boundary flux S1(r, z) = g/(mu_t + g mu_a) S(r, z, t_p).
double boundary_source_s1(const params::OpticalProperties& o, const LaserProtocol& p,
                          double r, double z);

}  // namespace ablation::source
