#pragma once

// Upper ball bounds for the sub-Gaussian stable measure, the family whose
// characteristic functional is exp(-((sum lambda_i y_i^2)^{alpha/2}) / 2).
// The envelope here minorizes lambda_j^{1/2}.

#include <cmath>

#include "smallball/common.hpp"
#include "smallball/profiles.hpp"
#include "smallball/stable.hpp"

namespace smallball::subgauss {

// log of the supremum of the n-dimensional density of the spherical stable
// law with ch.f. exp(-|t|^alpha / 2); attained at the origin:
//   2^{1 + n/alpha} pi^{n/2} Gamma(n/alpha) / ((2 pi)^n Gamma(n/2) alpha)
inline double q_zero_log(long n, const StabilityIndex& alpha) {
    if (n < 1) throw std::invalid_argument("q_zero_log: n must be >= 1");
    const double a = alpha;
    return (1.0 + double(n) / a) * std::log(2.0) + 0.5 * double(n) * std::log(pi) +
           std::lgamma(double(n) / a) - double(n) * std::log(2.0 * pi) -
           std::lgamma(0.5 * double(n)) - std::log(a);
}

// kappa(x) = (2/alpha)^{1/alpha} x^{(1-alpha)/alpha} / sigma(x)
inline Profile profile(const Envelope& env, const StabilityIndex& alpha) {
    if (env.role() != EnvelopeRole::minorant_half)
        throw std::invalid_argument("subgauss profile: envelope role must be minorant_half");
    const double a = alpha;
    return Profile(env, std::log(2.0 / a) / a, (1.0 - a) / a);
}

inline long index(const Envelope& env, const StabilityIndex& alpha, double eps) {
    return largest_admissible_index(profile(env, alpha), eps);
}

inline double growth(const Envelope& env, const StabilityIndex& alpha, double y) {
    return profile(env, alpha).growth(y);
}

enum class Variant { automatic, plain, sharp };

inline BoundResult ball_upper(const Envelope& env, const StabilityIndex& alpha, double eps,
                              Variant v = Variant::automatic) {
    const double a = alpha;
    const long zeta = index(env, alpha, eps);
    const double L = growth(env, alpha, double(zeta));
    const bool sharp =
        (v == Variant::sharp) || (v == Variant::automatic && env.log_convex());
    if (sharp && !env.log_convex())
        throw std::invalid_argument("ball_upper: sharp variant needs a log-convex envelope");
    BoundResult r;
    if (sharp) {
        r.log_value = -L - (0.5 / a) * std::log(std::pow(eps, a) * double(zeta));
        r.formula = Formula::subgauss_ball_envelope_sharp;
    } else {
        r.log_value =
            -L - ((2.0 - a) / (2.0 * a)) * std::log(double(zeta)) - std::log(eps);
        r.formula = Formula::subgauss_ball_envelope;
    }
    r.n_star = int(zeta);
    r.center_free = true;
    r.explicit_constant = false;
    return r;
}

// F2(n) = n log eps + (n/alpha) log(2/alpha) + n (1/alpha - 1)(log n - 1)
//         - log(n)/2 - sum_{j<=n} log sigma(j), minimized over n in [1, n_max].
inline BoundResult direct_ball_upper(const Envelope& env, const StabilityIndex& alpha,
                                     double eps, long n_max) {
    if (env.role() != EnvelopeRole::minorant_half)
        throw std::invalid_argument("direct_ball_upper: envelope role must be minorant_half");
    if (n_max < 1) throw std::invalid_argument("direct_ball_upper: n_max must be >= 1");
    const double a = alpha;
    const double per_n = std::log(eps) + std::log(2.0 / a) / a;
    double log_sigma_sum = 0.0;
    double best = std::numeric_limits<double>::infinity();
    long best_n = 1;
    for (long n = 1; n <= n_max; ++n) {
        log_sigma_sum += std::log(env(double(n)));
        const double ln_n = std::log(double(n));
        const double F2 = double(n) * per_n + double(n) * (1.0 / a - 1.0) * (ln_n - 1.0) -
                          0.5 * ln_n - log_sigma_sum;
        if (F2 < best) {
            best = F2;
            best_n = n;
        }
    }
    BoundResult r;
    r.log_value = best;
    r.n_star = int(best_n);
    r.formula = Formula::subgauss_ball_direct;
    r.center_free = true;
    r.explicit_constant = true;
    return r;
}

}  // namespace smallball::subgauss
