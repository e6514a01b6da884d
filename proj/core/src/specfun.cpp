#include "ablation/specfun.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ablation/rootfind.hpp"

namespace ablation::specfun {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;

// Crossovers chosen so adjacent branches agree near 1e-12; see the seam tests.
constexpr double kJYSeriesMax = 15.5;
constexpr double kISeriesMax = 18.0;
constexpr double kKSeriesMax = 4.0;
constexpr double kKIntegralMax = 90.0;

constexpr int kMaxSeriesTerms = 400;

[[noreturn]] void domain_fail(const char* fn, double x) {
    throw std::domain_error(std::string(fn) + ": argument " + std::to_string(x) +
                            " outside domain");
}

// ---- small-argument power series ------------------------------------------

long double j0_series_ld(long double x) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (fabsl(term) < 1e-24L * fabsl(sum) + 1e-4950L) break;
    }
    return sum;
}

long double j1_series_ld(long double x) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= -q / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (fabsl(term) < 1e-24L * fabsl(sum) + 1e-4950L) break;
    }
    return 0.5L * x * sum;
}

long double i0_series_ld(long double x) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
        if (term < 1e-24L * sum) break;
    }
    return sum;
}

long double i1_series_ld(long double x) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= q / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (term < 1e-24L * sum) break;
    }
    return 0.5L * x * sum;
}

long double y0_series_ld(long double x) {
    // Y0 = (2/pi)[(ln(x/2)+gamma) J0 + sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2]
    const long double q = 0.25L * x * x;
    long double term = 1.0L, hk = 0.0L, sum = 0.0L;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        hk += 1.0L / k;
        sum -= term * hk;  // (-1)^{k+1} q^k/(k!)^2 = -term
        if (fabsl(term) * hk < 1e-24L * (fabsl(sum) + 1.0e-30L)) break;
    }
    return (2.0L / kPi) * ((logl(0.5L * x) + kEulerGamma) * j0_series_ld(x) + sum);
}

long double y1_series_ld(long double x) {
    // Y1 = (2/pi)(ln(x/2)+gamma) J1 - 2/(pi x)
    //      - (x/(2 pi)) sum_{k>=0} (H_k + H_{k+1}) (-q)^k / (k! (k+1)!)
    const long double q = 0.25L * x * x;
    long double term = 1.0L;  // (-q)^k / (k!(k+1)!)
    long double hk = 0.0L, hk1 = 1.0L;
    long double sum = term * (hk + hk1);
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= -q / (static_cast<long double>(k) * (k + 1));
        hk += 1.0L / k;
        hk1 += 1.0L / (k + 1);
        const long double add = term * (hk + hk1);
        sum += add;
        if (fabsl(add) < 1e-24L * (fabsl(sum) + 1.0e-30L)) break;
    }
    return (2.0L / kPi) * (logl(0.5L * x) + kEulerGamma) * j1_series_ld(x) -
           2.0L / (kPi * x) - (x / (2.0L * kPi)) * sum;
}

long double k0_series_ld(long double x) {
    // K0 = -(ln(x/2)+gamma) I0 + sum_{k>=1} H_k q^k/(k!)^2
    const long double q = 0.25L * x * x;
    long double term = 1.0L, hk = 0.0L, sum = 0.0L;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        hk += 1.0L / k;
        sum += term * hk;
        if (term * hk < 1e-24L * (sum + 1.0e-30L)) break;
    }
    return -(logl(0.5L * x) + kEulerGamma) * i0_series_ld(x) + sum;
}

long double k1_series_ld(long double x) {
    // K1 = 1/x + (ln(x/2)+gamma) I1 - (x/4) sum_{k>=0} (H_k+H_{k+1}) q^k/(k!(k+1)!)
    const long double q = 0.25L * x * x;
    long double term = 1.0L;
    long double hk = 0.0L, hk1 = 1.0L;
    long double sum = term * (hk + hk1);
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= q / (static_cast<long double>(k) * (k + 1));
        hk += 1.0L / k;
        hk1 += 1.0L / (k + 1);
        const long double add = term * (hk + hk1);
        sum += add;
        if (add < 1e-24L * (fabsl(sum) + 1.0e-30L)) break;
    }
    return 1.0L / x + (logl(0.5L * x) + kEulerGamma) * i1_series_ld(x) -
           0.25L * x * sum;
}

// ---- large-argument expansions --------------------------------------------

// Hankel expansion pieces P, Q for order nu at argument x. Terms are added
// until they drop below working precision or (asymptotic series) would grow.
void hankel_pq(int nu, long double x, long double& p, long double& q) {
    const long double mu = 4.0L * nu * nu;
    p = 0.0L;
    q = 0.0L;
    long double u = 1.0L;      // u_m, signed factors included
    long double prev = 1e4932L;
    int sign = 1;              // (-1)^k applied per pair
    for (int m = 0; m < 80; ++m) {
        const long double mag = fabsl(u);
        if (mag >= prev) break;  // asymptotic tail started growing
        if (m % 2 == 0) {
            p += sign * u;
        } else {
            q += sign * u;
            sign = -sign;  // flip after completing a (u_{2k}, u_{2k+1}) pair
        }
        prev = mag;
        const long double d = 2.0L * m + 1.0L;
        u *= (mu - d * d) / (8.0L * (m + 1) * x);
        if (mag < 1e-24L) break;
    }
}

long double jy_asymptotic_ld(int nu, bool second_kind, long double x) {
    long double p, q;
    hankel_pq(nu, x, p, q);
    const long double omega = x - (2 * nu + 1) * kPi / 4.0L;
    const long double amp = sqrtl(2.0L / (kPi * x));
    const long double c = cosl(omega), s = sinl(omega);
    return second_kind ? amp * (p * s + q * c) : amp * (p * c - q * s);
}

// Modified-Bessel expansion sum: ratio +(mu-(2k-1)^2)/(8kx) for K,
// the sign-flipped version for I.
long double ik_asymptotic_sum(int nu, long double x, bool for_i) {
    const long double mu = 4.0L * nu * nu;
    long double term = 1.0L, sum = 1.0L;
    long double prev = 1e4932L;
    for (int k = 1; k < 80; ++k) {
        const long double d = 2.0L * k - 1.0L;
        long double ratio = (mu - d * d) / (8.0L * k * x);
        if (for_i) ratio = -ratio;
        term *= ratio;
        if (fabsl(term) >= prev) break;
        sum += term;
        prev = fabsl(term);
        if (fabsl(term) < 1e-24L * fabsl(sum)) break;
    }
    return sum;
}

long double i_asymptotic_ld(int nu, long double x) {
    return expl(x) / sqrtl(2.0L * kPi * x) * ik_asymptotic_sum(nu, x, true);
}

long double k_asymptotic_ld(int nu, long double x) {
    return sqrtl(kPi / (2.0L * x)) * expl(-x) * ik_asymptotic_sum(nu, x, false);
}

// ---- cosh-integral bridge for K -------------------------------------------

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt. The integrand decays
// doubly exponentially, so a plain trapezoid with step ~min(0.25, 0.6/sqrt(x))
// reaches full double accuracy with a few dozen nodes.
long double k_integral_ld(int nu, long double x) {
    const long double h = fminl(0.25L, 0.6L / sqrtl(x));
    long double sum = 0.5L;  // t = 0 node: exp(0) * cosh(0) / 2
    for (int k = 1; k < 4000; ++k) {
        const long double t = h * k;
        const long double sh = sinhl(0.5L * t);
        const long double expo = -2.0L * x * sh * sh;  // x(cosh t - 1)
        if (expo < -80.0L) break;
        long double f = expl(expo);
        if (nu == 1) f *= coshl(t);
        sum += f;
    }
    return h * sum * expl(-x);
}

// ---- root machinery ---------------------------------------------------------

double refine_bessel_root(bool order1, double approx) {
    auto f = [order1](double x) { return order1 ? j1(x) : j0(x); };
    double lo = approx - 0.45, hi = approx + 0.45;
    if (lo <= 0.0) lo = 1e-6;
    // McMahon estimates are good to <0.01 here, but verify the bracket anyway.
    if ((f(lo) > 0.0) == (f(hi) > 0.0))
        throw convergence_error("bessel root bracket failed near " + std::to_string(approx));
    // coarse bisection; the Newton polish below lands on machine precision
    double root = bisect_root(f, lo, hi, 1e-13 * approx);
    // Newton polish with the exact derivative (J0' = -J1, J1' = J0 - J1/x).
    for (int it = 0; it < 2; ++it) {
        const double fx = f(root);
        const double dfx = order1 ? (j0(root) - j1(root) / root) : -j1(root);
        if (dfx == 0.0) break;
        root -= fx / dfx;
    }
    return root;
}

std::vector<double> bessel_roots(bool order1, int count) {
    if (count < 1) throw std::domain_error("bessel roots: count must be >= 1");
    std::vector<double> roots;
    roots.reserve(count);
    for (int s = 1; s <= count; ++s) {
        // McMahon expansion: beta = (s -+ 1/4) pi, root ~ beta - (mu-1)/(8 beta).
        const double beta = (order1 ? (s + 0.25) : (s - 0.25)) * static_cast<double>(kPi);
        const double mu = order1 ? 4.0 : 0.0;
        const double approx = beta - (mu - 1.0) / (8.0 * beta);
        roots.push_back(refine_bessel_root(order1, approx));
    }
    return roots;
}

}  // namespace

// ---- branch evaluators (exposed for seam tests) ----------------------------

namespace detail {
double j0_series(double x) { return static_cast<double>(j0_series_ld(x)); }
double j1_series(double x) { return static_cast<double>(j1_series_ld(x)); }
double y0_series(double x) { return static_cast<double>(y0_series_ld(x)); }
double y1_series(double x) { return static_cast<double>(y1_series_ld(x)); }
double i0_series(double x) { return static_cast<double>(i0_series_ld(x)); }
double i1_series(double x) { return static_cast<double>(i1_series_ld(x)); }
double k0_series(double x) { return static_cast<double>(k0_series_ld(x)); }
double k1_series(double x) { return static_cast<double>(k1_series_ld(x)); }
double j0_asymptotic(double x) { return static_cast<double>(jy_asymptotic_ld(0, false, x)); }
double j1_asymptotic(double x) { return static_cast<double>(jy_asymptotic_ld(1, false, x)); }
double y0_asymptotic(double x) { return static_cast<double>(jy_asymptotic_ld(0, true, x)); }
double y1_asymptotic(double x) { return static_cast<double>(jy_asymptotic_ld(1, true, x)); }
double i0_asymptotic(double x) { return static_cast<double>(i_asymptotic_ld(0, x)); }
double i1_asymptotic(double x) { return static_cast<double>(i_asymptotic_ld(1, x)); }
double k0_asymptotic(double x) { return static_cast<double>(k_asymptotic_ld(0, x)); }
double k1_asymptotic(double x) { return static_cast<double>(k_asymptotic_ld(1, x)); }
double k0_integral(double x) { return static_cast<double>(k_integral_ld(0, x)); }
double k1_integral(double x) { return static_cast<double>(k_integral_ld(1, x)); }
}  // namespace detail

// ---- public evaluators ------------------------------------------------------

double j0(double x) {
    if (x < 0.0 || !std::isfinite(x)) domain_fail("j0", x);
    if (x == 0.0) return 1.0;
    return x <= kJYSeriesMax ? detail::j0_series(x) : detail::j0_asymptotic(x);
}

double j1(double x) {
    if (x < 0.0 || !std::isfinite(x)) domain_fail("j1", x);
    if (x == 0.0) return 0.0;
    return x <= kJYSeriesMax ? detail::j1_series(x) : detail::j1_asymptotic(x);
}

double y0(double x) {
    if (x <= 0.0 || !std::isfinite(x)) domain_fail("y0", x);
    return x <= kJYSeriesMax ? detail::y0_series(x) : detail::y0_asymptotic(x);
}

double y1(double x) {
    if (x <= 0.0 || !std::isfinite(x)) domain_fail("y1", x);
    return x <= kJYSeriesMax ? detail::y1_series(x) : detail::y1_asymptotic(x);
}

double i0(double x) {
    if (x < 0.0 || !std::isfinite(x)) domain_fail("i0", x);
    if (x == 0.0) return 1.0;
    const long double v = x <= kISeriesMax ? i0_series_ld(x) : i_asymptotic_ld(0, x);
    if (v > static_cast<long double>(DBL_MAX))
        throw overflow_regime_error("i0 overflows double range at x = " + std::to_string(x),
                                    x - 0.5 * std::log(2.0 * M_PI * x));
    return static_cast<double>(v);
}

double i1(double x) {
    if (x < 0.0 || !std::isfinite(x)) domain_fail("i1", x);
    if (x == 0.0) return 0.0;
    const long double v = x <= kISeriesMax ? i1_series_ld(x) : i_asymptotic_ld(1, x);
    if (v > static_cast<long double>(DBL_MAX))
        throw overflow_regime_error("i1 overflows double range at x = " + std::to_string(x),
                                    x - 0.5 * std::log(2.0 * M_PI * x));
    return static_cast<double>(v);
}

double k0(double x) {
    if (x <= 0.0 || !std::isfinite(x)) domain_fail("k0", x);
    if (x <= kKSeriesMax) return static_cast<double>(k0_series_ld(x));
    if (x < kKIntegralMax) return static_cast<double>(k_integral_ld(0, x));
    return static_cast<double>(k_asymptotic_ld(0, x));
}

double k1(double x) {
    if (x <= 0.0 || !std::isfinite(x)) domain_fail("k1", x);
    if (x <= kKSeriesMax) return static_cast<double>(k1_series_ld(x));
    if (x < kKIntegralMax) return static_cast<double>(k_integral_ld(1, x));
    return static_cast<double>(k_asymptotic_ld(1, x));
}

double bessel(BesselFamily family, int order, double x) {
    if (order != 0 && order != 1)
        throw std::domain_error("bessel: only orders 0 and 1 are supported");
    switch (family) {
        case BesselFamily::J: return order == 0 ? j0(x) : j1(x);
        case BesselFamily::Y: return order == 0 ? y0(x) : y1(x);
        case BesselFamily::I: return order == 0 ? i0(x) : i1(x);
        case BesselFamily::K: return order == 0 ? k0(x) : k1(x);
    }
    throw std::domain_error("bessel: unknown family");
}

std::vector<double> j0_roots(int count) { return bessel_roots(false, count); }
std::vector<double> j1_roots(int count) { return bessel_roots(true, count); }

RobinEigenvalues robin_eigenvalues(double a, double diffusion, double gamma_r, int count) {
    if (!(a > 0.0)) throw std::domain_error("robin_eigenvalues: a must be > 0");
    if (count < 1) throw std::domain_error("robin_eigenvalues: count must be >= 1");

    RobinEigenvalues out;
    if (diffusion == 0.0 && gamma_r == 0.0) {
        // F vanishes identically; no eigencondition left to solve.
        out.dirichlet_fallback = true;
    } else {
        auto f = [&](double b) {
            const double ba = b * a;
            return 2.0 * diffusion * b * j1(ba) + gamma_r * j0(ba);
        };
        // Roots are interlaced with the J0/J1 oscillation, so a pi/(16 a) scan
        // cannot step over two of them.
        const double step = static_cast<double>(kPi) / (16.0 * a);
        const double b_hi = (count + 8) * 2.0 * static_cast<double>(kPi) / a;
        const int steps = static_cast<int>(b_hi / step) + 1;
        auto brackets = scan_sign_changes(f, 0.5 * step, b_hi, steps, count);
        for (const auto& [lo, hi] : brackets) {
            if (static_cast<int>(out.roots.size()) >= count) break;
            out.roots.push_back(lo == hi ? lo : bisect_root(f, lo, hi));
        }
        if (static_cast<int>(out.roots.size()) < count) {
            out.roots.clear();
            out.dirichlet_fallback = true;
        }
    }
    if (out.dirichlet_fallback) {
        out.roots = j0_roots(count);
        for (double& r : out.roots) r /= a;
    }
    return out;
}

}  // namespace ablation::specfun
