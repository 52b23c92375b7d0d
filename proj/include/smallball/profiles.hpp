#pragma once

// Profiles c * x^s / f(x) over an envelope f. Every truncation rule in the
// bound machinery is of the form "largest n with eps * profile(n) <= 1" (or a
// mirrored smallest-n rule), and every growth integral is
// int_1^y x (log profile)'(x) dx = s (y - 1) + int_1^y rate(x) dx
// with rate(x) = -x f'(x)/f(x) supplied by the envelope.

#include <cmath>
#include <optional>
#include <string>

#include "smallball/common.hpp"
#include "smallball/spectra.hpp"

namespace smallball {

class Profile {
  public:
    Profile(Envelope env, double log_c, double s)
        : env_(std::move(env)), log_c_(log_c), s_(s) {}

    const Envelope& envelope() const { return env_; }
    double power() const { return s_; }

    double log_value(double x) const {
        return log_c_ + s_ * std::log(x) - std::log(env_(x));
    }
    double value(double x) const { return std::exp(log_value(x)); }

    // int_1^y x (log value)' dx; nonnegative iff the profile grows
    double growth(double y) const { return s_ * (y - 1.0) + env_.rate_integral(y); }
    double growth_quad(double y) const {
        return s_ * (y - 1.0) + env_.rate_integral_quad(y);
    }

    bool increasing_on_lattice() const { return log_value(2.0) > log_value(1.0); }

  private:
    Envelope env_;
    double log_c_;
    double s_;
};

// Largest integer n >= 1 with eps * profile(n) <= 1; the profile must grow
// along the lattice so the predicate is monotone.
inline long largest_admissible_index(const Profile& prof, double eps) {
    const double v1 = prof.value(1.0);
    if (!(eps > 0.0) || !(eps * v1 < 1.0))
        throw std::domain_error("truncation index: eps must lie in (0, " +
                                std::to_string(1.0 / v1) + "), got " + std::to_string(eps));
    if (!prof.increasing_on_lattice())
        throw std::domain_error("truncation index: profile does not increase, "
                                "no largest admissible index exists");
    long lo = 1, hi = 2;
    while (eps * prof.value(double(hi)) <= 1.0) {
        lo = hi;
        hi *= 2;
        if (hi > (1L << 40))
            throw std::runtime_error("truncation index: bracket exceeded 2^40");
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (eps * prof.value(double(mid)) <= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Smallest integer n >= 1 with pred(n) true, where pred is monotone
// (false ... false true ... true). Returns nullopt if no n up to the cap works.
template <class Pred>
std::optional<long> smallest_satisfying(Pred&& pred, long cap = (1L << 40)) {
    if (pred(1)) return 1;
    long lo = 1, hi = 2;
    while (!pred(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > cap) return std::nullopt;
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace smallball
