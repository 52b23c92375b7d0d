#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace smallball {

inline constexpr double pi = 3.14159265358979323846;

// Stability index of a symmetric stable law, 0 < alpha <= 2.
struct StabilityIndex {
    double alpha;

    explicit StabilityIndex(double a) : alpha(a) {
        if (!(a > 0.0) || !(a <= 2.0))
            throw std::invalid_argument("stability index must lie in (0, 2], got " +
                                        std::to_string(a));
    }
    operator double() const { return alpha; }
};

// Fractional-moment order, 0 < beta < alpha.
struct TailExponent {
    double beta;

    TailExponent(double b, const StabilityIndex& alpha) : beta(b) {
        if (!(b > 0.0) || !(b < alpha.alpha))
            throw std::invalid_argument("tail exponent must lie in (0, alpha), got " +
                                        std::to_string(b));
    }
    operator double() const { return beta; }
};

enum class Formula {
    cube_envelope,          // cube bound via truncation index and growth integral
    cube_envelope_sharp,    // log-convex refinement of the cube bound
    ball_envelope,          // ball bound via truncation index and growth integral
    ball_envelope_sharp,    // log-convex refinement of the ball bound
    cube_direct,            // cube bound minimized over the truncation dimension
    ball_direct,            // ball bound minimized over the truncation dimension
    subgauss_ball_envelope,
    subgauss_ball_envelope_sharp,
    subgauss_ball_direct,
    ball_lower,             // lower ball bound, multiplicative constant dropped
    ball_lower_explicit,    // lower ball bound with every constant materialized
    cube_lower,
    cube_lower_explicit,
};

inline const char* formula_name(Formula f) {
    switch (f) {
        case Formula::cube_envelope: return "cube_envelope";
        case Formula::cube_envelope_sharp: return "cube_envelope_sharp";
        case Formula::ball_envelope: return "ball_envelope";
        case Formula::ball_envelope_sharp: return "ball_envelope_sharp";
        case Formula::cube_direct: return "cube_direct";
        case Formula::ball_direct: return "ball_direct";
        case Formula::subgauss_ball_envelope: return "subgauss_ball_envelope";
        case Formula::subgauss_ball_envelope_sharp: return "subgauss_ball_envelope_sharp";
        case Formula::subgauss_ball_direct: return "subgauss_ball_direct";
        case Formula::ball_lower: return "ball_lower";
        case Formula::ball_lower_explicit: return "ball_lower_explicit";
        case Formula::cube_lower: return "cube_lower";
        case Formula::cube_lower_explicit: return "cube_lower_explicit";
    }
    return "?";
}

// A bound on the log of a small-set probability. `explicit_constant` says
// whether log_value includes every multiplicative factor, or drops a finite
// constant that the underlying estimate does not pin down.
struct BoundResult {
    double log_value = std::numeric_limits<double>::quiet_NaN();
    int n_star = 0;               // truncation dimension the bound was achieved at
    Formula formula{};
    bool center_free = false;     // valid for balls around any center
    bool explicit_constant = false;

    bool valid() const { return std::isfinite(log_value) && n_star >= 1; }
};

// Thrown when a quadrature cannot meet the requested tolerance.
struct QuadratureError : std::runtime_error {
    double achieved;
    QuadratureError(const std::string& what, double achieved_err)
        : std::runtime_error(what + " (achieved error " + std::to_string(achieved_err) + ")"),
          achieved(achieved_err) {}
};

}  // namespace smallball
