#pragma once

// Eigenvalue sequences lambda_1 >= lambda_2 >= ... > 0 and the differentiable
// monotone envelopes that bound lambda_n^{1/alpha} (minorant or majorant) or
// lambda_n^{1/2} (minorant). Envelopes carry analytic rates -x f'(x)/f(x) so
// the growth integrals downstream have closed forms for the built-ins.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "smallball/common.hpp"
#include "smallball/quadrature.hpp"

namespace smallball {

namespace detail {

// Hurwitz zeta tail sum_{i >= a} i^{-s} for s > 1 via Euler-Maclaurin.
inline double zeta_tail(double s, double a) {
    double sum = 0.0;
    double q = a;
    while (q < std::max(30.0, 2.0 * s)) {
        sum += std::pow(q, -s);
        q += 1.0;
    }
    const double qs = std::pow(q, -s);
    sum += q * qs / (s - 1.0) + 0.5 * qs;
    sum += s * qs / q / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * qs / (q * q * q) / 720.0;
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * qs / std::pow(q, 5.0) / 30240.0;
    return sum;
}

}  // namespace detail

class LambdaSequence {
  public:
    enum class Kind { power, exponential, custom };

    static LambdaSequence power(double gamma) {
        if (!(gamma > 1.0))
            throw std::invalid_argument("power sequence needs gamma > 1 to be summable");
        LambdaSequence s;
        s.kind_ = Kind::power;
        s.gamma_ = gamma;
        return s;
    }

    static LambdaSequence exponential() {
        LambdaSequence s;
        s.kind_ = Kind::exponential;
        return s;
    }

    static LambdaSequence custom(std::vector<double> table) {
        if (table.empty()) throw std::invalid_argument("custom sequence: empty table");
        LambdaSequence s;
        s.kind_ = Kind::custom;
        s.table_ = std::move(table);
        return s;
    }

    // Two-column CSV: index, lambda_i. Strictly positive and nonincreasing.
    static LambdaSequence from_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open sequence file: " + path);
        std::vector<double> vals;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ss(line);
            long idx;
            double v;
            if (!(ss >> idx >> v)) {
                if (vals.empty()) continue;  // tolerate a header line
                throw std::invalid_argument("bad sequence line: " + line);
            }
            if (idx != long(vals.size()) + 1)
                throw std::invalid_argument("sequence indices must run 1..N in order");
            if (!(v > 0.0)) throw std::invalid_argument("sequence entries must be positive");
            if (!vals.empty() && v > vals.back())
                throw std::invalid_argument("sequence entries must be nonincreasing");
            vals.push_back(v);
        }
        return custom(std::move(vals));
    }

    Kind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    std::size_t table_size() const { return table_.size(); }

    double operator()(long i) const {
        if (i < 1) throw std::invalid_argument("sequence index must be >= 1");
        switch (kind_) {
            case Kind::power: return std::pow(double(i), -gamma_);
            case Kind::exponential: return std::exp(-double(i));
            case Kind::custom:
                if (std::size_t(i) > table_.size())
                    throw std::out_of_range("custom sequence index past table end");
                return table_[i - 1];
        }
        return 0.0;
    }

    bool has_tail_sum() const { return kind_ != Kind::custom; }

    // sum_{i > n} lambda_i^e, relative error <= 1e-9.
    double tail_sum(long n, double e) const {
        if (n < 0) throw std::invalid_argument("tail_sum: n must be >= 0");
        switch (kind_) {
            case Kind::power: {
                const double s = gamma_ * e;
                if (!(s > 1.0))
                    throw std::domain_error("tail_sum diverges: gamma*e must exceed 1");
                return detail::zeta_tail(s, double(n) + 1.0);
            }
            case Kind::exponential: {
                if (!(e > 0.0)) throw std::domain_error("tail_sum diverges for e <= 0");
                return std::exp(-e * double(n + 1)) / (1.0 - std::exp(-e));
            }
            case Kind::custom:
                throw std::domain_error(
                    "custom sequences carry no analytic tail; tail-dependent operations "
                    "are rejected");
        }
        return 0.0;
    }

  private:
    Kind kind_ = Kind::custom;
    double gamma_ = 0.0;
    std::vector<double> table_;
};

inline double tail_sum(const LambdaSequence& seq, long n, double e) {
    return seq.tail_sum(n, e);
}

enum class EnvelopeRole { minorant_alpha, minorant_half, majorant_alpha };

inline const char* role_name(EnvelopeRole r) {
    switch (r) {
        case EnvelopeRole::minorant_alpha: return "minorant_alpha";
        case EnvelopeRole::minorant_half: return "minorant_half";
        case EnvelopeRole::majorant_alpha: return "majorant_alpha";
    }
    return "?";
}

// Differentiable decreasing envelope on [1, inf). rate(x) = -x f'(x)/f(x) is
// the quantity every growth integral consumes; built-ins carry it in closed
// form (constant for power envelopes, s*x for exponential ones).
class Envelope {
  public:
    enum class RateKind { constant, linear_in_x, generic };

    Envelope(EnvelopeRole role, std::function<double(double)> f,
             std::function<double(double)> df, RateKind rk, double rate_coeff)
        : role_(role), f_(std::move(f)), df_(std::move(df)), rate_kind_(rk),
          rate_coeff_(rate_coeff) {
        log_convex_ = check_log_convex();
    }

    static Envelope power_envelope(EnvelopeRole role, double exponent) {
        return Envelope(role, [exponent](double x) { return std::pow(x, -exponent); },
                        [exponent](double x) { return -exponent * std::pow(x, -exponent - 1.0); },
                        RateKind::constant, exponent);
    }

    static Envelope exponential_envelope(EnvelopeRole role, double scale) {
        // f(x) = exp(-x / scale)
        return Envelope(role, [scale](double x) { return std::exp(-x / scale); },
                        [scale](double x) { return -std::exp(-x / scale) / scale; },
                        RateKind::linear_in_x, 1.0 / scale);
    }

    EnvelopeRole role() const { return role_; }
    bool log_convex() const { return log_convex_; }
    double operator()(double x) const { return f_(x); }
    double deriv(double x) const { return df_(x); }

    double rate(double x) const {
        switch (rate_kind_) {
            case RateKind::constant: return rate_coeff_;
            case RateKind::linear_in_x: return rate_coeff_ * x;
            case RateKind::generic: return -x * df_(x) / f_(x);
        }
        return 0.0;
    }

    // int_1^y rate(x) dx
    double rate_integral(double y) const {
        if (y < 1.0) throw std::invalid_argument("rate_integral: y must be >= 1");
        switch (rate_kind_) {
            case RateKind::constant: return rate_coeff_ * (y - 1.0);
            case RateKind::linear_in_x: return 0.5 * rate_coeff_ * (y * y - 1.0);
            case RateKind::generic: return rate_integral_quad(y);
        }
        return 0.0;
    }

    // quadrature route, used directly for generic envelopes and as a
    // cross-check for the closed forms
    double rate_integral_quad(double y) const {
        if (y <= 1.0) return 0.0;
        return integrate_segmented([this](double x) { return rate(x); }, 1.0, y, 1e-9);
    }

  private:
    bool check_log_convex() const {
        const double h = 0.25;
        double prev = std::log(f_(1.0));
        double cur = std::log(f_(1.0 + h));
        for (double x = 1.0 + 2.0 * h; x <= 64.0; x += h) {
            const double next = std::log(f_(x));
            if (next - 2.0 * cur + prev < -1e-9) return false;
            prev = cur;
            cur = next;
        }
        return true;
    }

    EnvelopeRole role_;
    std::function<double(double)> f_, df_;
    RateKind rate_kind_;
    double rate_coeff_;
    bool log_convex_;
};

// Exact envelopes for the built-in sequences; log-linear interpolation through
// the table knots for custom ones (equality at integers, conservative slopes
// extended past the table end).
inline Envelope make_envelope(const LambdaSequence& seq, EnvelopeRole role, double alpha) {
    const double p = (role == EnvelopeRole::minorant_half) ? 2.0 : alpha;
    switch (seq.kind()) {
        case LambdaSequence::Kind::power:
            return Envelope::power_envelope(role, seq.gamma() / p);
        case LambdaSequence::Kind::exponential:
            return Envelope::exponential_envelope(role, p);
        case LambdaSequence::Kind::custom: {
            const std::size_t n = seq.table_size();
            std::vector<double> logv(n);
            for (std::size_t i = 0; i < n; ++i) logv[i] = std::log(seq(long(i) + 1)) / p;
            if (n == 1)
                throw std::invalid_argument(
                    "custom sequence needs at least two entries for an envelope");
            // segment index for knots at 1..n, last slope extended past the end
            auto seg = [m = n](double x) {
                const double xi = std::max(1.0, x);
                return std::min<std::size_t>(m - 1, std::size_t(std::floor(xi)));
            };
            auto logf = [logv, seg](double x) {
                const std::size_t i = seg(x);
                return logv[i - 1] + (logv[i] - logv[i - 1]) * (std::max(1.0, x) - double(i));
            };
            auto dlogf = [logv, seg](double x) {
                const std::size_t i = seg(x);
                return logv[i] - logv[i - 1];
            };
            return Envelope(role, [logf](double x) { return std::exp(logf(x)); },
                            [logf, dlogf](double x) { return std::exp(logf(x)) * dlogf(x); },
                            Envelope::RateKind::generic, 0.0);
        }
    }
    throw std::logic_error("make_envelope: unknown sequence kind");
}

struct ValidationReport {
    bool ok = true;
    std::string message = "ok";
    long at_index = 0;
};

// Checks the standing hypotheses: lambda positive and nonincreasing, envelope
// decreasing, the role inequality at integers 1..N, and log-convexity when the
// flag is set. Violations are reported, not thrown.
inline ValidationReport validate(const LambdaSequence& seq, const Envelope& env, double alpha,
                                 long N) {
    if (N < 1) throw std::invalid_argument("validate: N must be >= 1");
    ValidationReport rep;
    const long limit =
        (seq.kind() == LambdaSequence::Kind::custom) ? std::min<long>(N, seq.table_size()) : N;
    double prev = std::numeric_limits<double>::infinity();
    for (long i = 1; i <= limit; ++i) {
        const double l = seq(i);
        if (!(l > 0.0)) return {false, "lambda not positive", i};
        if (l > prev * (1.0 + 1e-12)) return {false, "lambda not nonincreasing", i};
        prev = l;
    }
    const double p = (env.role() == EnvelopeRole::minorant_half) ? 2.0 : alpha;
    for (long i = 1; i <= limit; ++i) {
        const double target = std::pow(seq(i), 1.0 / p);
        const double v = env(double(i));
        const double tol = 1e-12 * std::max(1.0, std::abs(target));
        switch (env.role()) {
            case EnvelopeRole::minorant_alpha:
            case EnvelopeRole::minorant_half:
                if (v > target + tol) return {false, "envelope exceeds the minorant target", i};
                break;
            case EnvelopeRole::majorant_alpha:
                if (v < target - tol) return {false, "envelope below the majorant target", i};
                break;
        }
    }
    for (double x = 1.0; x <= double(limit); x += 0.5) {
        if (!(env.deriv(x) < 1e-15)) return {false, "envelope not decreasing", long(x)};
    }
    if (env.log_convex()) {
        // re-verify on integers: log f midpoint rule
        for (long i = 1; i + 2 <= limit; ++i) {
            const double d2 = std::log(env(double(i))) - 2.0 * std::log(env(double(i + 1))) +
                              std::log(env(double(i + 2)));
            if (d2 < -1e-9) return {false, "log-convexity flag not supported by values", i};
        }
    }
    return rep;
}

}  // namespace smallball
