#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ablation/errors.hpp"

namespace ablation {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
    long evaluations = 0;
};

namespace detail {

// Hard cap on function evaluations; an unreachable tolerance then degrades to
// converged = false instead of unbounded subdivision.
inline constexpr long kSimpsonBudget = 4'000'000;

template <class F>
void adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                          double whole, double tol, int depth, QuadratureResult& res) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    res.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const bool out_of_budget = depth <= 0 || res.evaluations > kSimpsonBudget;
    if (out_of_budget || std::abs(delta) <= 15.0 * tol) {
        res.value += left + right + delta / 15.0;
        res.error_estimate += std::abs(delta) / 15.0;
        if (out_of_budget && std::abs(delta) > 15.0 * tol) res.converged = false;
        return;
    }
    adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, res);
    adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, res);
}

}  // namespace detail

// Adaptive Simpson with absolute tolerance. Integrand must be finite on [a,b].
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double abs_tol,
                                  int max_depth = 48) {
    QuadratureResult res;
    if (a == b) return res;
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    res.evaluations = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, res);
    return res;
}

// Integrates across known kinks: the interval is split at every interior
// breakpoint and each smooth piece handled by adaptive Simpson.
template <class F>
QuadratureResult integrate_with_breakpoints(F&& f, double a, double b,
                                            std::vector<double> breakpoints,
                                            double abs_tol, int max_depth = 48) {
    QuadratureResult total;
    if (a == b) return total;
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> pts;
    for (double p : breakpoints) {
        if (p < a || p > b) continue;
        if (pts.empty() || p > pts.back()) pts.push_back(p);
    }
    const double piece_tol = abs_tol / std::max<std::size_t>(1, pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadratureResult piece = adaptive_simpson(f, pts[i], pts[i + 1], piece_tol, max_depth);
        total.value += piece.value;
        total.error_estimate += piece.error_estimate;
        total.converged = total.converged && piece.converged;
        total.evaluations += piece.evaluations;
    }
    return total;
}

}  // namespace ablation
