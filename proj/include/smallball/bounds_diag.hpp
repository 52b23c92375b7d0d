#pragma once

// Upper bounds for cube and ball probabilities under the diagonal stable
// measure on l2 (independent coordinates lambda_i^{1/alpha} xi_i). Two routes:
//
//  * envelope route: a truncation index from the profile, a growth integral,
//    and a log(eps) term; the multiplicative constant of these bounds is not
//    pinned down, so BoundResult::explicit_constant is false.
//  * direct route: the underlying finite-dimensional estimate evaluated at
//    every truncation dimension up to n_max and minimized; every factor is
//    explicit, so these are the bounds Monte Carlo comparisons use.

#include <cmath>

#include "smallball/common.hpp"
#include "smallball/profiles.hpp"
#include "smallball/stable.hpp"

namespace smallball::diag {

enum class Variant { automatic, plain, sharp };

// sqrt(2 pi) * p_alpha(0) = 2^{1/2 + 1/alpha} Gamma(1/alpha) / (sqrt(pi) alpha)
inline double ball_profile_constant(const StabilityIndex& alpha) {
    const double a = alpha;
    return std::exp((0.5 + 1.0 / a) * std::log(2.0) + std::lgamma(1.0 / a) -
                    0.5 * std::log(pi) - std::log(a));
}

inline void require_role(const Envelope& env, EnvelopeRole want, const char* who) {
    if (env.role() != want)
        throw std::invalid_argument(std::string(who) + ": envelope role must be " +
                                    role_name(want) + ", got " + role_name(env.role()));
}

// phi(x) = (2 p_alpha(0) sigma(x))^{-1}
inline Profile cube_profile(const Envelope& env, const StabilityIndex& alpha) {
    require_role(env, EnvelopeRole::minorant_alpha, "cube_profile");
    return Profile(env, -std::log(2.0 * density_at_zero(alpha)), 0.0);
}

// Psi(x) = C0(alpha) (sigma(x) sqrt(x))^{-1}
inline Profile ball_profile(const Envelope& env, const StabilityIndex& alpha) {
    require_role(env, EnvelopeRole::minorant_alpha, "ball_profile");
    return Profile(env, std::log(ball_profile_constant(alpha)), -0.5);
}

inline long cube_index(const Envelope& env, const StabilityIndex& alpha, double eps) {
    return largest_admissible_index(cube_profile(env, alpha), eps);
}

inline long ball_index(const Envelope& env, const StabilityIndex& alpha, double eps) {
    return largest_admissible_index(ball_profile(env, alpha), eps);
}

inline double cube_growth(const Envelope& env, const StabilityIndex& alpha, double y) {
    return cube_profile(env, alpha).growth(y);
}

inline double ball_growth(const Envelope& env, const StabilityIndex& alpha, double y) {
    return ball_profile(env, alpha).growth(y);
}

inline BoundResult cube_upper(const Envelope& env, const StabilityIndex& alpha, double eps,
                              Variant v = Variant::automatic) {
    const long nu = cube_index(env, alpha, eps);
    const double H = cube_growth(env, alpha, double(nu));
    const bool sharp =
        (v == Variant::sharp) || (v == Variant::automatic && env.log_convex());
    if (sharp && !env.log_convex())
        throw std::invalid_argument("cube_upper: sharp variant needs a log-convex envelope");
    BoundResult r;
    r.log_value = sharp ? -H - 0.5 * std::log(eps) : -H - std::log(eps);
    r.n_star = int(nu);
    r.formula = sharp ? Formula::cube_envelope_sharp : Formula::cube_envelope;
    r.center_free = false;
    r.explicit_constant = false;
    return r;
}

inline BoundResult ball_upper(const Envelope& env, const StabilityIndex& alpha, double eps,
                              Variant v = Variant::automatic) {
    // conservative admissibility: eps below the reciprocal of both profiles at 1
    const double phi1 = cube_profile(env, alpha).value(1.0);
    const double psi1 = ball_profile(env, alpha).value(1.0);
    const double edge = 1.0 / std::max(phi1, psi1);
    if (!(eps > 0.0) || !(eps < edge))
        throw std::domain_error("ball_upper: eps must lie in (0, " + std::to_string(edge) +
                                "), got " + std::to_string(eps));
    const long eta = ball_index(env, alpha, eps);
    const double K = ball_growth(env, alpha, double(eta));
    const bool sharp =
        (v == Variant::sharp) || (v == Variant::automatic && env.log_convex());
    if (sharp && !env.log_convex())
        throw std::invalid_argument("ball_upper: sharp variant needs a log-convex envelope");
    BoundResult r;
    r.log_value = sharp ? -K - 0.25 * std::log(eps * eps * double(eta))
                        : -K - std::log(eps);
    r.n_star = int(eta);
    r.formula = sharp ? Formula::ball_envelope_sharp : Formula::ball_envelope;
    r.center_free = true;  // ball bounds hold around any center
    r.explicit_constant = false;
    return r;
}

// F(n) = n log eps + n log(2 p_alpha(0)) - sum_{i<=n} log sigma(i), minimized
// over n in [1, n_max]. Valid with no hidden constant.
inline BoundResult direct_cube_upper(const Envelope& env, const StabilityIndex& alpha,
                                     double eps, long n_max) {
    require_role(env, EnvelopeRole::minorant_alpha, "direct_cube_upper");
    if (n_max < 1) throw std::invalid_argument("direct_cube_upper: n_max must be >= 1");
    const double per_n = std::log(eps) + std::log(2.0 * density_at_zero(alpha));
    double log_sigma_sum = 0.0;
    double best = std::numeric_limits<double>::infinity();
    long best_n = 1;
    for (long n = 1; n <= n_max; ++n) {
        log_sigma_sum += std::log(env(double(n)));
        const double F = double(n) * per_n - log_sigma_sum;
        if (F < best) {
            best = F;
            best_n = n;
        }
    }
    BoundResult r;
    r.log_value = best;
    r.n_star = int(best_n);
    r.formula = Formula::cube_direct;
    r.center_free = false;
    r.explicit_constant = true;
    return r;
}

// F1(n) = n log eps + n log C0 - sum log sigma(i) - log(n)/2 - n(log n - 1)/2.
// The Stirling step only discards a factor below one, so exp(F1) stays a
// valid bound; it also holds around any center.
inline BoundResult direct_ball_upper(const Envelope& env, const StabilityIndex& alpha,
                                     double eps, long n_max) {
    require_role(env, EnvelopeRole::minorant_alpha, "direct_ball_upper");
    if (n_max < 1) throw std::invalid_argument("direct_ball_upper: n_max must be >= 1");
    const double per_n = std::log(eps) + std::log(ball_profile_constant(alpha));
    double log_sigma_sum = 0.0;
    double best = std::numeric_limits<double>::infinity();
    long best_n = 1;
    for (long n = 1; n <= n_max; ++n) {
        log_sigma_sum += std::log(env(double(n)));
        const double ln_n = std::log(double(n));
        const double F1 =
            double(n) * per_n - log_sigma_sum - 0.5 * ln_n - 0.5 * double(n) * (ln_n - 1.0);
        if (F1 < best) {
            best = F1;
            best_n = n;
        }
    }
    BoundResult r;
    r.log_value = best;
    r.n_star = int(best_n);
    r.formula = Formula::ball_direct;
    r.center_free = true;
    r.explicit_constant = true;
    return r;
}

}  // namespace smallball::diag
