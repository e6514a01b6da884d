#pragma once

#include <vector>

#include "ablation/errors.hpp"

namespace ablation::specfun {

// Zero- and first-order cylinder functions evaluated without any external
// special-function dependency: power series for small argument, standard
// large-argument expansions beyond a fixed per-family crossover, and (for K,
// whose log-type series cancels catastrophically at moderate argument) a
// doubly-exponential trapezoid of the cosh integral representation in the
// midrange. All internal accumulation is in long double; results are
// deterministic: the same (family, order, x) yields bit-identical output.

enum class BesselFamily { J, Y, I, K };

// order must be 0 or 1. Domain: x >= 0 for J and I, x > 0 for Y and K.
// Throws std::domain_error outside the domain and overflow_regime_error when
// I0/I1 exceed the double range (never silently saturates).
double bessel(BesselFamily family, int order, double x);

double j0(double x);
double j1(double x);
double y0(double x);
double y1(double x);
double i0(double x);
double i1(double x);
double k0(double x);
double k1(double x);

// First `count` positive roots of J0 (strictly increasing); |J0(root)| <= 1e-12.
std::vector<double> j0_roots(int count);
// First `count` positive roots of J1.
std::vector<double> j1_roots(int count);

struct RobinEigenvalues {
    std::vector<double> roots;       // first positive roots of F, increasing
    bool dirichlet_fallback = false; // true when F degenerated and J0 roots were used
};

// Positive roots b of F(b) = 2*diffusion*b*J1(b*a) + gamma_r*J0(b*a), the
// radial Robin condition for a J0(b r) mode on a disk of radius a. When F is
// identically degenerate (diffusion = 0 together with gamma_r = 0) the
// Dirichlet family J0(b*a) = 0 is returned and flagged.
RobinEigenvalues robin_eigenvalues(double a, double diffusion, double gamma_r, int count);

namespace detail {
// Branch evaluators, exposed so the crossover seams can be tested directly.
double j0_series(double x);
double j1_series(double x);
double y0_series(double x);
double y1_series(double x);
double i0_series(double x);
double i1_series(double x);
double k0_series(double x);
double k1_series(double x);
double j0_asymptotic(double x);
double j1_asymptotic(double x);
double y0_asymptotic(double x);
double y1_asymptotic(double x);
double i0_asymptotic(double x);
double i1_asymptotic(double x);
double k0_asymptotic(double x);
double k1_asymptotic(double x);
// cosh-integral bridge for K0/K1 (valid for x >= ~2)
double k0_integral(double x);
double k1_integral(double x);
}  // namespace detail

}  // namespace ablation::specfun
