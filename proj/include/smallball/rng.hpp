#pragma once

// Deterministic random streams and stable-law samplers.
//
// Uniform deviates are built from the top 53 bits of a mt19937_64 draw so the
// sequence is identical across standard libraries; normals use an explicit
// cached Box-Muller for the same reason. Worker streams are derived from a
// master seed by splitmix64 so that a (seed, worker) pair always names the
// same stream.

#include <cmath>
#include <cstdint>
#include <random>

#include "smallball/common.hpp"

namespace smallball {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    static Rng worker_stream(std::uint64_t master_seed, std::uint64_t worker) {
        return Rng(splitmix64(master_seed ^ splitmix64(worker + 1)));
    }

    // [0, 1)
    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

    // (0, 1)
    double uniform_pos() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    double exponential() { return -std::log1p(-uniform()); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform_pos();
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(2.0 * pi * v);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * v);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Chambers-Mallows-Stuck draw with ch.f. exp(-|t|^alpha).
inline double sample_standard_symmetric_stable(Rng& rng, const StabilityIndex& alpha) {
    const double a = alpha;
    const double V = pi * (rng.uniform_pos() - 0.5);
    const double W = rng.exponential() + 1e-300;
    if (a == 1.0) return std::tan(V);
    const double s = std::sin(a * V) / std::pow(std::cos(V), 1.0 / a);
    const double c = std::pow(std::cos((1.0 - a) * V) / W, (1.0 - a) / a);
    return s * c;
}

// Draw from the law with ch.f. exp(-|t|^alpha / 2), i.e. the CMS variate
// rescaled by 2^{-1/alpha}.
inline double sample_stable(Rng& rng, const StabilityIndex& alpha) {
    return std::pow(2.0, -1.0 / alpha.alpha) * sample_standard_symmetric_stable(rng, alpha);
}

// Positive theta-stable variate with Laplace transform exp(-s^theta),
// theta in (0, 1). Kanter form scaled by cos(pi theta / 2)^{1/theta}.
inline double sample_positive_stable(Rng& rng, double theta) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("sample_positive_stable: theta must lie in (0,1)");
    const double U = pi * rng.uniform_pos();
    const double W = rng.exponential() + 1e-300;
    const double x = std::sin(theta * U) * std::pow(std::sin((1.0 - theta) * U) / W,
                                                    (1.0 - theta) / theta) /
                     std::pow(std::sin(U), 1.0 / theta);
    return std::pow(std::cos(0.5 * pi * theta), 1.0 / theta) * x;
}

}  // namespace smallball
