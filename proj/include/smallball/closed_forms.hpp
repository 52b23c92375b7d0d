#pragma once

// Closed-form asymptotics for two example spectra: lambda_i = i^{-gamma}
// (power) and lambda_i = e^{-i} (geometric). Everything is evaluated in log
// scale with undetermined multiplicative constants dropped; these formulas
// cross-check the generic machinery and feed the documentation tables.

#include <cmath>

#include "smallball/common.hpp"

namespace smallball::closed_forms {

inline double c5(const StabilityIndex& alpha, double gamma) {
    const double a = alpha, d = 2.0 - 2.0 * a + gamma * a;
    return d / (2.0 * a) * std::pow(0.5 * a, 2.0 / d);
}

inline double c6(const StabilityIndex& alpha, double gamma) {
    const double a = alpha, d = 2.0 * gamma - a;
    return d / (2.0 * a) *
           std::pow(std::sqrt(pi) * a / (2.0 * std::tgamma(1.0 / a)), 2.0 * a / d);
}

inline double c7(const StabilityIndex& alpha, double gamma) {
    return (2.0 * gamma - alpha.alpha) / (2.0 * alpha.alpha);
}

inline double c8(const StabilityIndex& alpha) {
    const double a = alpha;
    return 0.5 + 2.0 * a * a *
                     std::log(pi * a /
                              (std::pow(2.0, (1.0 + a) / a) * std::tgamma(1.0 / a)));
}

// power spectrum, sub-Gaussian family, ball:
// eps^{-a(g-2)/(2(2-2a+ga))} exp(-C5 eps^{-2a/(2-2a+ga)})
inline double power_subgauss_ball_log(const StabilityIndex& alpha, double gamma, double eps) {
    const double a = alpha, d = 2.0 - 2.0 * a + gamma * a;
    if (!(gamma > 1.0)) throw std::domain_error("power_subgauss_ball_log: gamma must exceed 1");
    if (!(d > 0.0))
        throw std::domain_error("power_subgauss_ball_log: exponent denominator not positive");
    return -a * (gamma - 2.0) / (2.0 * d) * std::log(eps) -
           c5(alpha, gamma) * std::pow(eps, -2.0 * a / d);
}

// power spectrum, diagonal family, cube:
// (1/sqrt eps) exp(-(pi g / (2^{1/a} Gamma(1/a))) eps^{-a/g})
inline double power_cube_log(const StabilityIndex& alpha, double gamma, double eps) {
    if (!(gamma > 1.0)) throw std::domain_error("power_cube_log: gamma must exceed 1");
    const double a = alpha;
    const double coeff = pi * gamma / (std::pow(2.0, 1.0 / a) * std::tgamma(1.0 / a));
    return -0.5 * std::log(eps) - coeff * std::pow(eps, -a / gamma);
}

// power spectrum, diagonal family, ball:
// eps^{(a-g)/(2g-a)} exp(-C6 eps^{-2a/(2g-a)})
inline double power_ball_log(const StabilityIndex& alpha, double gamma, double eps) {
    if (!(gamma > 1.0)) throw std::domain_error("power_ball_log: gamma must exceed 1");
    const double a = alpha, d = 2.0 * gamma - a;
    return (a - gamma) / d * std::log(eps) - c6(alpha, gamma) * std::pow(eps, -2.0 * a / d);
}

// power spectrum, diagonal family, lower ball bound. The printed prefactor
// exponent is garbled in the source material; evaluated for display only and
// excluded from every regression.
inline double power_ball_lower_log(const StabilityIndex& alpha, double gamma, double gamma1,
                                   double eps) {
    if (!(gamma1 > 1.0) || !(gamma1 < gamma))
        throw std::domain_error("power_ball_lower_log: need 1 < gamma1 < gamma");
    const double a = alpha, delta = gamma1 / gamma;
    const double prefactor_exp = (1.0 + a + 0.5 * delta) / std::pow(gamma, delta - 1.0);
    return prefactor_exp * std::log(eps) -
           c7(alpha, gamma) * std::pow(eps, -delta * a / (gamma * delta - 1.0));
}

// geometric spectrum, diagonal family, cube lower: exp(-a ln^2(1/eps))
inline double geometric_cube_lower_log(const StabilityIndex& alpha, double eps) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::domain_error("geometric_cube_lower_log: eps must lie in (0,1)");
    const double l = std::log(1.0 / eps);
    return -alpha.alpha * l * l;
}

// geometric spectrum, diagonal family, cube upper:
// eps^{-C8} exp(-(a/2) ln^2(1/eps))
inline double geometric_cube_upper_log(const StabilityIndex& alpha, double eps) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::domain_error("geometric_cube_upper_log: eps must lie in (0,1)");
    const double l = std::log(1.0 / eps);
    return c8(alpha) * l - 0.5 * alpha.alpha * l * l;
}

}  // namespace smallball::closed_forms
