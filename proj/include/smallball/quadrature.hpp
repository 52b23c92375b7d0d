#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "smallball/common.hpp"

namespace smallball {

namespace detail {

template <class F>
double simpson_panel(F&& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F&& f, double a, double b, double eps, int depth, double fa,
                            double fm, double fb, double whole, double& err_acc) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(f, a, m, fa, flm, fm);
    const double right = simpson_panel(f, m, b, fm, frm, fb);
    const double diff = (left + right) - whole;
    if (std::abs(diff) <= 15.0 * eps || depth <= 0) {
        err_acc += std::abs(diff) / 15.0;
        return left + right + diff / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, 0.5 * eps, depth - 1, fa, flm, fm, left, err_acc) +
           adaptive_simpson_rec(f, m, b, 0.5 * eps, depth - 1, fm, frm, fb, right, err_acc);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction; err_out (optional) receives the
// accumulated error estimate.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10, double* err_out = nullptr) {
    if (a == b) {
        if (err_out) *err_out = 0.0;
        return 0.0;
    }
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = detail::simpson_panel(f, a, b, fa, fm, fb);
    double err = 0.0;
    const double v = detail::adaptive_simpson_rec(f, a, b, tol, 48, fa, fm, fb, whole, err);
    if (err_out) *err_out = err;
    return sign * v;
}

// Relative-tolerance wrapper used by the growth integrals: splits [a, b] into
// octave segments so long ranges do not starve the recursion depth.
template <class F>
double integrate_segmented(F&& f, double a, double b, double rel_tol = 1e-9) {
    if (b <= a) return 0.0;
    std::vector<double> knots{a};
    double t = std::max(a, 1.0);
    while (t < b) {
        t = std::min(b, t * 2.0);
        if (t > knots.back()) knots.push_back(t);
    }
    if (knots.back() < b) knots.push_back(b);
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        coarse += std::abs(integrate(f, knots[i], knots[i + 1], 1e-6));
    const double tol_abs = std::max(rel_tol * std::max(coarse, 1.0), 1e-300);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        total += integrate(f, knots[i], knots[i + 1], tol_abs / double(knots.size() - 1));
    return total;
}

// Accelerated tail of an alternating series sum_{k>=0} (-1)^k a_k with smooth,
// eventually decreasing a_k (Euler transform on the forward-difference table).
// Returns the tail estimate; err_out receives the magnitude of the last
// correction, an estimate of the truncation error.
inline double alternating_tail(const std::vector<double>& a, double* err_out = nullptr) {
    if (a.empty()) {
        if (err_out) *err_out = 0.0;
        return 0.0;
    }
    std::vector<double> d(a);
    double sum = 0.5 * d[0];
    double contrib = sum;
    for (std::size_t order = 1; order < d.size(); ++order) {
        for (std::size_t i = 0; i + order < d.size(); ++i) d[i] = d[i + 1] - d[i];
        // contribution of this difference order: (-1)^order Δ^order a_0 / 2^(order+1)
        contrib = ((order % 2) ? -1.0 : 1.0) * d[0] / std::ldexp(1.0, int(order) + 1);
        sum += contrib;
        if (std::abs(contrib) < 1e-300) break;
    }
    if (err_out) *err_out = std::abs(contrib);
    return sum;
}

}  // namespace smallball
