#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "ablation/errors.hpp"

namespace ablation {

// Bracketing bisection polished by one guarded Newton step at the end.
// Never runs unguarded Newton: oscillatory functions (Bessel combinations)
// would escape the bracket.
template <class F>
double bisect_root(F&& f, double lo, double hi, double x_tol = 0.0) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw convergence_error("bisect_root: interval does not bracket a sign change");
    if (x_tol <= 0.0) x_tol = 1e-15 * (std::abs(lo) + std::abs(hi) + 1.0);

    for (int it = 0; it < 200 && (hi - lo) > x_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // interval reached ulp spacing
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    // One Newton polish by central difference, accepted only if it stays
    // inside the final bracket.
    const double h = std::max(1e-7 * (hi - lo), 1e-18 * std::abs(x));
    if (h > 0.0) {
        const double d = (f(x + h) - f(x - h)) / (2.0 * h);
        if (d != 0.0 && std::isfinite(d)) {
            const double xn = x - f(x) / d;
            if (xn > lo && xn < hi) x = xn;
        }
    }
    return x;
}

// Scans [lo, hi] with `steps` uniform probes and returns up to `max_brackets`
// sign-change intervals, left to right.
template <class F>
std::vector<std::pair<double, double>> scan_sign_changes(F&& f, double lo, double hi,
                                                         int steps, int max_brackets) {
    std::vector<std::pair<double, double>> out;
    if (steps < 1 || !(hi > lo)) return out;
    double x_prev = lo;
    double f_prev = f(lo);
    for (int i = 1; i <= steps && static_cast<int>(out.size()) < max_brackets; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / steps;
        const double fx = f(x);
        if (f_prev == 0.0) {
            out.emplace_back(x_prev, x_prev);
        } else if ((fx > 0.0) != (f_prev > 0.0)) {
            out.emplace_back(x_prev, x);
        }
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

}  // namespace ablation
