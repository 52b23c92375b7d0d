#pragma once

// One-dimensional symmetric stable law with characteristic function
// exp(-|t|^alpha / 2): density by Fourier inversion, the closed form at the
// origin, fractional absolute moments, a validated lower-bound constant for
// the density, and a CDF built from the density.
//
// The inversion integral (1/pi) int_0^inf cos(tx) exp(-t^alpha/2) dt is
// integrated between consecutive cosine zeros; the resulting alternating lobe
// series is summed directly when it decays fast and extrapolated by an Euler
// transform otherwise. Power-law tails (densities, tail probabilities, moment
// tails) use the standard series in x^{-k*alpha}, convergent for alpha < 1 and
// asymptotic for alpha > 1, truncated at its smallest term.

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "smallball/common.hpp"
#include "smallball/quadrature.hpp"

namespace smallball {

// p_alpha(0) = 2^{1/alpha} Gamma(1/alpha) / (pi alpha)
inline double density_at_zero(const StabilityIndex& alpha) {
    const double a = alpha;
    return std::exp(std::log(2.0) / a + std::lgamma(1.0 / a) - std::log(pi * a));
}

struct DensityResult {
    double value;
    double abs_err;      // error estimate actually achieved
    bool relaxed_tol;    // true when alpha < 1/2 and the target was relaxed 10x
};

namespace detail {

// Signed k-th coefficient of the power-tail series (without the x power):
// (-1)^{k+1} Gamma(k a + 1) / k! * 2^{-k} * sin(k pi a / 2)
inline double tail_series_coeff(double a, int k) {
    const double mag =
        std::exp(std::lgamma(k * a + 1.0) - std::lgamma(k + 1.0) - k * std::log(2.0));
    const double s = std::sin(0.5 * k * pi * a);
    return ((k % 2) ? 1.0 : -1.0) * mag * s;
}

// T such that int_T^inf exp(-t^a/2) dt is provably below `budget`.
inline double decay_cutoff(double a, double budget) {
    auto g = [a](double t) { return std::exp(-0.5 * std::pow(t, a)); };
    double T = 1.0;
    double seg = integrate(g, 0.0, T, 1e-8);
    (void)seg;
    double prev = 1e300;
    for (int i = 0; i < 64; ++i) {
        const double s = integrate(g, T, 2.0 * T, 1e-12 + 1e-4 * budget);
        if (s < 0.25 * budget && s < 0.5 * prev) {
            // remaining octaves are geometrically dominated
            return 2.0 * T;
        }
        prev = s;
        T *= 2.0;
    }
    return T;
}

}  // namespace detail

// Density of the law with ch.f. exp(-|t|^alpha/2), absolute error <= tol
// (10*tol for alpha < 1/2). Symmetric in x by construction.
inline DensityResult density_ex(const StabilityIndex& alpha, double x, double tol = 1e-10) {
    if (!(tol > 0.0)) throw std::invalid_argument("density: tol must be positive");
    const double a = alpha;
    const bool relaxed = a < 0.5;
    const double wtol = relaxed ? 10.0 * tol : tol;
    x = std::abs(x);

    auto g = [a](double t) { return std::exp(-0.5 * std::pow(t, a)); };
    auto f = [&](double t) { return std::cos(t * x) * g(t); };

    const double budget = wtol * pi;  // working on pi * p(x)
    const double T = detail::decay_cutoff(a, 0.25 * budget);

    double total = 0.0;
    double err = 0.25 * budget;  // cutoff contribution

    const double z0 = (x > 0.0) ? 0.5 * pi / x : std::numeric_limits<double>::infinity();
    if (z0 >= T) {
        // effectively non-oscillatory on [0, T]
        double qe = 0.0;
        double t0 = 0.0, t1 = std::min(1.0, T);
        while (true) {
            double e = 0.0;
            total += integrate(f, t0, t1, 0.02 * budget, &e);
            qe += e;
            if (t1 >= T) break;
            t0 = t1;
            t1 = std::min(2.0 * t1, T);
        }
        err += qe;
    } else {
        const double period = pi / x;
        const double lobe_tol = 0.125 * budget / 256.0;

        double qe = 0.0;
        total = integrate(f, 0.0, z0, lobe_tol, &qe);
        err += qe;

        // Full lobes between consecutive cosine zeros alternate in sign.
        // Sum directly while the terms decay under the budget; otherwise
        // collect a block of smooth terms and Euler-extrapolate the rest.
        const std::size_t direct_cap = 48;
        const std::size_t block = 160;
        std::vector<double> mags;
        double lead_sign = 0.0;
        double prev_mag = std::numeric_limits<double>::infinity();
        bool settled = false;
        for (std::size_t k = 0; k < direct_cap + block; ++k) {
            const double lo = z0 + k * period;
            if (lo >= T) {
                settled = mags.empty();  // past the cutoff the budget covers the rest
                break;
            }
            double e = 0.0;
            const double I = integrate(f, lo, lo + period, lobe_tol, &e);
            err += e;
            const double m = std::abs(I);
            if (k < direct_cap) {
                total += I;
                if (k >= 2 && m <= prev_mag && m < 0.0625 * budget) {
                    err += m;  // alternating remainder <= next term
                    settled = true;
                    break;
                }
                prev_mag = m;
            } else {
                if (mags.empty()) lead_sign = (I >= 0.0) ? 1.0 : -1.0;
                mags.push_back(m);
            }
        }
        if (!settled && !mags.empty()) {
            if (mags.size() < 8) {
                // too few collected terms to extrapolate; add them as-is
                double s = lead_sign;
                for (double m : mags) {
                    total += s * m;
                    s = -s;
                }
                err += mags.back();
            } else {
                double ee = 0.0;
                total += lead_sign * alternating_tail(mags, &ee);
                err += ee;
            }
        }
    }

    double p = total / pi;
    if (p < 0.0 && p > -err) p = 0.0;  // cancellation can leave a tiny negative
    if (err > 4.0 * wtol)
        throw QuadratureError("density: requested tolerance not met", err / pi);
    return {p, err / pi, relaxed};
}

inline double density(const StabilityIndex& alpha, double x, double tol = 1e-10) {
    return density_ex(alpha, x, tol).value;
}

namespace detail {

enum class SeriesKind { density, upper_prob, moment_tail };

// Shared power-tail series evaluator. `beta` is used only by moment_tail.
inline double power_tail_series(double a, double x, SeriesKind kind, double beta,
                                double* err_out) {
    if (a >= 2.0) {  // every sin(k pi) vanishes: superpolynomial tail
        if (err_out) *err_out = 0.0;
        return 0.0;
    }
    const double lx = std::log(x);
    double sum = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    double trunc_err = 0.0;
    int kept = 0;
    for (int k = 1; k <= 120; ++k) {
        if (std::abs(std::sin(0.5 * k * pi * a)) < 1e-12) continue;  // vanished harmonic
        const double c = tail_series_coeff(a, k);
        double term;
        switch (kind) {
            case SeriesKind::density: term = c * std::exp(-(k * a + 1.0) * lx); break;
            case SeriesKind::upper_prob: term = c / (k * a) * std::exp(-k * a * lx); break;
            case SeriesKind::moment_tail:
                term = c / (k * a - beta) * std::exp((beta - k * a) * lx);
                break;
        }
        const double mag = std::abs(term);
        if (mag > prev_mag && kept > 2) {
            // asymptotic regime: stop before terms grow; error <= first omitted
            trunc_err = mag;
            break;
        }
        sum += term;
        prev_mag = mag;
        trunc_err = mag;
        ++kept;
        if (mag < 1e-16 * std::abs(sum)) break;
    }
    if (err_out) *err_out = trunc_err;
    return sum;
}

}  // namespace detail

// P(X > x) for large x via the power-tail series (alpha < 2; returns 0 at
// alpha == 2 where the series degenerates -- callers handle that regime).
inline double tail_probability_series(const StabilityIndex& alpha, double x,
                                      double* err_out = nullptr) {
    return detail::power_tail_series(alpha, x, detail::SeriesKind::upper_prob, 0.0, err_out) /
           pi;
}

// int_X^inf x^beta p(x) dx via the same series.
inline double moment_tail_series(const StabilityIndex& alpha, double beta, double X,
                                 double* err_out = nullptr) {
    return detail::power_tail_series(alpha, X, detail::SeriesKind::moment_tail, beta,
                                     err_out) /
           pi;
}

// E|X|^beta for 0 < beta < alpha, by quadrature split at |x| = 1 with the
// power-tail series closing the outer part. Relative error ~ 1e-6.
inline double abs_moment(const StabilityIndex& alpha, const TailExponent& beta) {
    const double b = beta;
    auto integrand = [&](double x) { return std::pow(x, b) * density(alpha, x, 1e-11); };
    double inner = integrate(integrand, 0.0, 1.0, 1e-10);
    double mid = 0.0;
    const double X = 32.0;
    for (double lo = 1.0; lo < X; lo *= 2.0) mid += integrate(integrand, lo, 2.0 * lo, 1e-10);
    double tail_err = 0.0;
    const double tail = moment_tail_series(alpha, b, X, &tail_err);
    return 2.0 * (inner + mid + tail);
}

// Constant c with p_alpha(x) >= c * min(1, |x|^{-(1+alpha)}) for alpha < 2:
// the grid infimum of the ratio times a 0.99 safety factor, with the
// asymptotic regime beyond the grid floored analytically. Memoized per alpha.
inline double density_floor_constant(const StabilityIndex& alpha) {
    const double a = alpha;
    if (a >= 2.0)
        throw std::domain_error("density_floor_constant: no power-law floor at alpha = 2");

    static std::mutex mu;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(a);
        if (it != cache.end()) return it->second;
    }

    double inf_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 128; ++i) {
        const double x = i / 128.0;
        inf_ratio = std::min(inf_ratio, density(alpha, x, 1e-9));
    }
    const double X_grid = 50.0;
    for (double x = 1.0; x <= X_grid * 1.0001; x *= std::pow(2.0, 1.0 / 16.0)) {
        const double r = density(alpha, x, 1e-9) * std::pow(x, 1.0 + a);
        inf_ratio = std::min(inf_ratio, r);
    }
    // ratio -> c1 with first correction c2 * x^{-alpha}; floor the remainder
    const double c1 = std::abs(detail::tail_series_coeff(a, 1)) / pi;
    const double c2 = std::abs(detail::tail_series_coeff(a, 2)) / pi;
    const double beyond = c1 - 2.0 * c2 * std::pow(X_grid, -a);
    if (beyond > 0.0) inf_ratio = std::min(inf_ratio, beyond);

    const double c = 0.99 * inf_ratio;
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(a, c);
    return c;
}

// CDF assembled from the density: cumulative quadrature on a grid up to
// x_cut, power-tail series beyond. Built once, then cheap to evaluate.
class StableCdf {
  public:
    explicit StableCdf(const StabilityIndex& alpha, double x_cut = 30.0)
        : alpha_(alpha), x_cut_(x_cut) {
        xs_.push_back(0.0);
        double x = 0.0;
        while (x < 2.0) xs_.push_back(x += 0.05);
        while (x < x_cut_) xs_.push_back(x = std::min(x * 1.05, x_cut_));
        Fs_.resize(xs_.size());
        Fs_[0] = 0.5;
        for (std::size_t i = 1; i < xs_.size(); ++i) {
            auto p = [&](double t) { return density(alpha_, t, 1e-10); };
            Fs_[i] = Fs_[i - 1] + integrate(p, xs_[i - 1], xs_[i], 1e-10);
        }
    }

    double operator()(double x) const {
        if (x < 0.0) return 1.0 - (*this)(-x);
        if (x >= x_cut_) {
            if (alpha_.alpha >= 2.0) {
                return 1.0 - 0.5 * std::erfc(x / std::sqrt(2.0));
            }
            return 1.0 - tail_probability_series(alpha_, x);
        }
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        const std::size_t j = std::max<std::size_t>(1, it - xs_.begin()) - 1;
        const double w = (x - xs_[j]) / (xs_[j + 1] - xs_[j]);
        return Fs_[j] + w * (Fs_[j + 1] - Fs_[j]);
    }

  private:
    StabilityIndex alpha_;
    double x_cut_;
    std::vector<double> xs_, Fs_;
};

}  // namespace smallball
