#pragma once

// Monte Carlo oracle: truncated sampling from both measure families, ball and
// cube probability estimates with exact binomial confidence intervals, and
// fractional-moment control of the truncation error.
//
// Reproducibility contract: the sample space is partitioned deterministically
// across workers, each worker derives its stream from (seed, worker index),
// and results merge by integer summation, so (seed, workers, config) pins the
// output bit for bit.

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "smallball/common.hpp"
#include "smallball/rng.hpp"
#include "smallball/spectra.hpp"
#include "smallball/stable.hpp"

namespace smallball::mc {

enum class Family { diag, subgauss };

inline const char* family_name(Family f) { return f == Family::diag ? "diag" : "subgauss"; }

struct Config {
    long samples = 100000;
    std::uint64_t seed = 1;
    int workers = 4;
    std::optional<long> fixed_truncation;  // overrides the automatic choice
    double delta = 0.01;                   // tail-bound target for auto truncation
    double beta_tail = 0.0;                // moment order; 0 -> 0.8 * alpha
    double confidence = 0.95;

    void check() const {
        if (samples < 100) throw std::invalid_argument("mc: need at least 100 samples");
        if (workers < 1) throw std::invalid_argument("mc: need at least one worker");
        if (!(delta > 0.0) || !(delta < 0.5))
            throw std::invalid_argument("mc: delta must lie in (0, 0.5)");
    }
    double tail_beta(double alpha) const { return beta_tail > 0.0 ? beta_tail : 0.8 * alpha; }
};

struct Estimate {
    double eps = 0.0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    long n_trunc = 0;
    double trunc_tail_bound = 0.0;
    std::uint64_t seed = 0;
    int workers = 0;
    long samples = 0;
};

struct Interval {
    double low, high;
};

// Exact (Clopper-Pearson) two-sided binomial interval.
inline Interval clopper_pearson(long k, long n, double confidence = 0.95) {
    if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("clopper_pearson: bad counts");
    const double a = 0.5 * (1.0 - confidence);
    Interval iv{0.0, 1.0};
    if (k > 0) iv.low = boost::math::ibeta_inv(double(k), double(n - k + 1), a);
    if (k < n) iv.high = boost::math::ibeta_inv(double(k + 1), double(n - k), 1.0 - a);
    return iv;
}

// Fractional-moment bound on P(residual past n exceeds eps-scale mass).
// Ball geometry: P(sum_{i>n} x_i^2 > eps^2/2) <= 2^{b/2} E|xi|^b eps^{-b} S
// with S = sum_{i>n} lambda_i^{b/alpha} (diagonal) or lambda_i^{b/2}
// (sub-Gaussian marginals scale with lambda^{1/2}).
inline double ball_tail_bound(const LambdaSequence& seq, const StabilityIndex& alpha,
                              double beta, double eps, long n, Family family) {
    const double expo = (family == Family::diag) ? beta / alpha.alpha : 0.5 * beta;
    const double moment = abs_moment(alpha, TailExponent(beta, alpha));
    return std::pow(2.0, 0.5 * beta) * moment * seq.tail_sum(n, expo) / std::pow(eps, beta);
}

// Cube geometry: per-coordinate union bound, no 2^{b/2} factor.
inline double cube_tail_bound(const LambdaSequence& seq, const StabilityIndex& alpha,
                              double beta, double eps, long n) {
    const double moment = abs_moment(alpha, TailExponent(beta, alpha));
    return moment * seq.tail_sum(n, beta / alpha.alpha) / std::pow(eps, beta);
}

// Smallest truncation dimension whose tail bound is at most delta.
inline long truncation_dim(const LambdaSequence& seq, const StabilityIndex& alpha, double beta,
                           double eps, double delta, Family family = Family::diag,
                           bool cube_geometry = false) {
    if (!(delta > 0.0)) throw std::invalid_argument("truncation_dim: delta must be positive");
    long lo = 1, hi = 1;
    auto bound = [&](long n) {
        return cube_geometry ? cube_tail_bound(seq, alpha, beta, eps, n)
                             : ball_tail_bound(seq, alpha, beta, eps, n, family);
    };
    if (bound(1) <= delta) return 1;
    hi = 2;
    while (bound(hi) > delta) {
        lo = hi;
        hi *= 2;
        if (hi > (1L << 30))
            throw std::runtime_error("truncation_dim: no dimension up to 2^30 meets delta");
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (bound(mid) <= delta)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// One truncated draw from the diagonal measure: x_i = lambda_i^{1/alpha} xi_i.
inline void sample_diag(const LambdaSequence& seq, const StabilityIndex& alpha, long n,
                        Rng& rng, std::vector<double>& out) {
    out.resize(n);
    const double inv_a = 1.0 / alpha.alpha;
    for (long i = 0; i < n; ++i)
        out[i] = std::pow(seq(i + 1), inv_a) * sample_stable(rng, alpha);
}

// One truncated draw from the sub-Gaussian measure: sqrt(c A) * lambda_i^{1/2} Z_i
// with A positive (alpha/2)-stable and c = 2^{1 - 2/alpha}, so each coordinate
// has ch.f. exp(-(lambda_i t^2)^{alpha/2} / 2). At alpha = 2 the mixing factor
// degenerates and the draw is plain Gaussian.
inline void sample_subgauss(const LambdaSequence& seq, const StabilityIndex& alpha, long n,
                            Rng& rng, std::vector<double>& out) {
    out.resize(n);
    const double a = alpha;
    double scale = 1.0;
    if (a < 2.0) {
        const double c = std::pow(2.0, 1.0 - 2.0 / a);
        scale = std::sqrt(c * sample_positive_stable(rng, 0.5 * a));
    }
    for (long i = 0; i < n; ++i)
        out[i] = scale * std::sqrt(seq(i + 1)) * rng.normal();
}

namespace detail {

template <class Indicator>
std::vector<long> run_workers(const Config& cfg, long n_trunc, std::size_t n_eps,
                              Indicator&& indicator) {
    const int W = cfg.workers;
    std::vector<std::vector<long>> counts(W, std::vector<long>(n_eps, 0));
    auto work = [&](int w) {
        Rng rng = Rng::worker_stream(cfg.seed, std::uint64_t(w));
        const long quota = cfg.samples / W + (w < cfg.samples % W ? 1 : 0);
        std::vector<double> x;
        for (long s = 0; s < quota; ++s) indicator(rng, x, counts[w]);
        (void)n_trunc;
    };
    if (W == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(W);
        for (int w = 0; w < W; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    std::vector<long> total(n_eps, 0);
    for (int w = 0; w < W; ++w)
        for (std::size_t j = 0; j < n_eps; ++j) total[j] += counts[w][j];
    return total;
}

inline std::vector<Estimate> assemble(const Config& cfg, const std::vector<double>& eps_list,
                                      const std::vector<long>& hits, long n_trunc,
                                      const std::vector<double>& tail_bounds) {
    std::vector<Estimate> out(eps_list.size());
    for (std::size_t j = 0; j < eps_list.size(); ++j) {
        auto iv = clopper_pearson(hits[j], cfg.samples, cfg.confidence);
        out[j] = {eps_list[j],
                  double(hits[j]) / double(cfg.samples),
                  iv.low,
                  iv.high,
                  n_trunc,
                  tail_bounds[j],
                  cfg.seed,
                  cfg.workers,
                  cfg.samples};
    }
    return out;
}

inline void require_sorted_eps(const std::vector<double>& eps_list) {
    if (eps_list.empty()) throw std::invalid_argument("mc: eps list must be nonempty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw std::invalid_argument("mc: eps must be positive");
        if (i > 0 && eps_list[i] <= eps_list[i - 1])
            throw std::invalid_argument("mc: eps list must be strictly increasing");
    }
}

}  // namespace detail

// Empirical P(||X - center|| <= eps) for each eps in the (ascending) list,
// all thresholds evaluated on the same draws. The center is padded or
// truncated to the working dimension.
inline std::vector<Estimate> estimate_ball(Family family, const LambdaSequence& seq,
                                           const StabilityIndex& alpha,
                                           const std::vector<double>& eps_list,
                                           const std::vector<double>& center,
                                           const Config& cfg) {
    cfg.check();
    detail::require_sorted_eps(eps_list);
    const double beta = cfg.tail_beta(alpha);
    const long n = cfg.fixed_truncation
                       ? *cfg.fixed_truncation
                       : truncation_dim(seq, alpha, beta, eps_list.front(), cfg.delta, family);
    std::vector<double> c(center);
    c.resize(n, 0.0);

    std::vector<double> eps2(eps_list.size());
    for (std::size_t j = 0; j < eps_list.size(); ++j) eps2[j] = eps_list[j] * eps_list[j];

    auto indicator = [&](Rng& rng, std::vector<double>& x, std::vector<long>& cnt) {
        if (family == Family::diag)
            sample_diag(seq, alpha, n, rng, x);
        else
            sample_subgauss(seq, alpha, n, rng, x);
        double q = 0.0;
        for (long i = 0; i < n; ++i) {
            const double d = x[i] - c[i];
            q += d * d;
        }
        for (std::size_t j = 0; j < cnt.size(); ++j)
            if (q <= eps2[j]) ++cnt[j];
    };
    auto hits = detail::run_workers(cfg, n, eps_list.size(), indicator);

    std::vector<double> tails(eps_list.size());
    for (std::size_t j = 0; j < eps_list.size(); ++j)
        tails[j] = ball_tail_bound(seq, alpha, beta, eps_list[j], n, family);
    return detail::assemble(cfg, eps_list, hits, n, tails);
}

// Empirical P(sup_i |X_i| <= eps), diagonal family.
inline std::vector<Estimate> estimate_cube(const LambdaSequence& seq,
                                           const StabilityIndex& alpha,
                                           const std::vector<double>& eps_list,
                                           const Config& cfg) {
    cfg.check();
    detail::require_sorted_eps(eps_list);
    const double beta = cfg.tail_beta(alpha);
    const long n = cfg.fixed_truncation
                       ? *cfg.fixed_truncation
                       : truncation_dim(seq, alpha, beta, eps_list.front(), cfg.delta,
                                        Family::diag, true);

    auto indicator = [&](Rng& rng, std::vector<double>& x, std::vector<long>& cnt) {
        sample_diag(seq, alpha, n, rng, x);
        double m = 0.0;
        for (long i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
        for (std::size_t j = 0; j < cnt.size(); ++j)
            if (m <= eps_list[j]) ++cnt[j];
    };
    auto hits = detail::run_workers(cfg, n, eps_list.size(), indicator);

    std::vector<double> tails(eps_list.size());
    for (std::size_t j = 0; j < eps_list.size(); ++j)
        tails[j] = cube_tail_bound(seq, alpha, beta, eps_list[j], n);
    return detail::assemble(cfg, eps_list, hits, n, tails);
}

}  // namespace smallball::mc
