#pragma once

// Least-squares helpers for the exponent-reproduction reports. Power-law
// exponents come from an ordinary fit of log(-log bound) against log(1/eps).
// The geometric-spectrum coefficients are extracted by fitting each closed
// form's own shape: a pure quadratic in log(1/eps) when the form has no
// prefactor, a {quadratic, linear} basis when it carries a power prefactor.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace smallball {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: bad data");
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    return {(n * sxy - sx * sy) / det, (sy * sxx - sx * sxy) / det};
}

// y = a x, no intercept
inline double fit_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("fit_through_origin: bad data");
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
    }
    return sxy / sxx;
}

// y = a x + b z, no constant term; returns a
inline double fit_two_basis(const std::vector<double>& x, const std::vector<double>& z,
                            const std::vector<double>& y) {
    if (x.size() != y.size() || z.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_two_basis: bad data");
    double sxx = 0, szz = 0, sxz = 0, sxy = 0, szy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        szz += z[i] * z[i];
        sxz += x[i] * z[i];
        sxy += x[i] * y[i];
        szy += z[i] * y[i];
    }
    const double det = sxx * szz - sxz * sxz;
    return (sxy * szz - szy * sxz) / det;
}

inline std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw std::invalid_argument("log_grid: bad parameters");
    std::vector<double> g(points);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        g[i] = std::exp(llo + (lhi - llo) * double(i) / double(points - 1));
    return g;
}

}  // namespace smallball
