#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "smallball/bounds_diag.hpp"

using namespace smallball;

namespace {
Envelope power_min(double exponent) {
    return Envelope::power_envelope(EnvelopeRole::minorant_alpha, exponent);
}
}  // namespace

TEST_CASE("cube profile values") {
    // alpha = 2, f(x) = 1/x: profile is sqrt(pi/2) x
    auto env = power_min(1.0);
    auto prof = diag::cube_profile(env, StabilityIndex(2.0));
    for (double x : {1.0, 2.0, 7.5})
        CHECK(prof.value(x) == Catch::Approx(std::sqrt(pi / 2.0) * x).epsilon(1e-12));

    // alpha = 1, lambda_i = i^{-2}: profile is (pi/4) x^2
    auto env2 = power_min(2.0);
    auto prof2 = diag::cube_profile(env2, StabilityIndex(1.0));
    for (double x : {1.0, 3.0, 10.0})
        CHECK(prof2.value(x) == Catch::Approx(pi / 4.0 * x * x).epsilon(1e-12));

    // left endpoint by definition
    CHECK(prof2.value(1.0) ==
          Catch::Approx(1.0 / (2.0 * density_at_zero(StabilityIndex(1.0)) * env2(1.0)))
              .epsilon(1e-13));

    // wrong role is rejected
    auto maj = Envelope::power_envelope(EnvelopeRole::majorant_alpha, 2.0);
    CHECK_THROWS_AS(diag::cube_profile(maj, StabilityIndex(1.0)), std::invalid_argument);
}

TEST_CASE("cube truncation index") {
    const StabilityIndex one(1.0);
    auto env = power_min(2.0);

    SECTION("closed-form inversion vs the lattice") {
        // eps (pi/4) n^2 <= 1  =>  n = floor(2 / sqrt(pi eps))
        for (double eps : {0.04, 0.01, 0.003, 0.2}) {
            CAPTURE(eps);
            const long expected = long(std::floor(2.0 / std::sqrt(pi * eps)));
            CHECK(diag::cube_index(env, one, eps) == expected);
        }
        CHECK(diag::cube_index(env, one, 0.04) == 5);
    }
    SECTION("independent lattice-scan oracle") {
        auto prof = diag::cube_profile(env, one);
        for (double eps : {0.11, 0.037, 0.0012}) {
            long best = 0;
            for (long n = 1; n <= 2000; ++n)
                if (eps * prof.value(double(n)) <= 1.0) best = n;
            CHECK(diag::cube_index(env, one, eps) == best);
        }
    }
    SECTION("boundary behaviour") {
        const double edge = 4.0 / pi;  // 1/phi(1)
        CHECK(diag::cube_index(env, one, edge * 0.999) == 1);
        CHECK_THROWS_AS(diag::cube_index(env, one, edge), std::domain_error);
        CHECK_THROWS_AS(diag::cube_index(env, one, edge * 1.5), std::domain_error);
    }
}

TEST_CASE("growth integrals") {
    const StabilityIndex one(1.0);
    SECTION("zero at the left endpoint") {
        CHECK(diag::cube_growth(power_min(2.0), one, 1.0) == 0.0);
        CHECK(diag::ball_growth(power_min(2.0), one, 1.0) == 0.0);
    }
    SECTION("power envelope: constant rate gamma/alpha") {
        CHECK(diag::cube_growth(power_min(2.0), one, 5.0) == Catch::Approx(8.0).epsilon(1e-12));
        auto prof = diag::cube_profile(power_min(2.0), one);
        CHECK(prof.growth_quad(5.0) == Catch::Approx(8.0).epsilon(1e-9));
    }
    SECTION("exponential envelope: linear rate") {
        auto env = Envelope::exponential_envelope(EnvelopeRole::minorant_alpha, 1.0);
        CHECK(diag::cube_growth(env, one, 3.0) == Catch::Approx(4.0).epsilon(1e-12));
        auto prof = diag::cube_profile(env, one);
        CHECK(prof.growth_quad(3.0) == Catch::Approx(4.0).epsilon(1e-9));
    }
    SECTION("nondecreasing in y") {
        auto env = power_min(2.0);
        double prev = 0.0;
        for (double y = 1.0; y <= 40.0; y += 1.5) {
            const double h = diag::cube_growth(env, one, y);
            CHECK(h >= prev - 1e-12);
            prev = h;
        }
    }
}

TEST_CASE("ball profile constant") {
    CHECK(diag::ball_profile_constant(StabilityIndex(2.0)) == Catch::Approx(1.0).margin(1e-12));
    CHECK(diag::ball_profile_constant(StabilityIndex(1.0)) ==
          Catch::Approx(std::pow(2.0, 1.5) / std::sqrt(pi)).epsilon(1e-13));
    // sqrt(2 pi) p_alpha(0) for every alpha
    for (double a : {0.6, 1.0, 1.3, 1.7, 2.0}) {
        CAPTURE(a);
        CHECK(diag::ball_profile_constant(StabilityIndex(a)) ==
              Catch::Approx(std::sqrt(2.0 * pi) * density_at_zero(StabilityIndex(a)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("ball growth rate and index for the power example") {
    const StabilityIndex one(1.0);
    auto env = power_min(2.0);
    // rate 2 - 1/2 = 3/2
    CHECK(diag::ball_growth(env, one, 5.0) == Catch::Approx(1.5 * 4.0).epsilon(1e-12));
    auto prof = diag::ball_profile(env, one);
    CHECK(prof.growth_quad(5.0) == Catch::Approx(6.0).epsilon(1e-9));

    // eps = 0.1: largest n with eps C0(1) n^{3/2} <= 1 is 3
    CHECK(diag::ball_index(env, one, 0.1) == 3);
}

TEST_CASE("cube bound values") {
    const StabilityIndex one(1.0);
    auto env = power_min(2.0);
    REQUIRE(env.log_convex());

    auto plain = diag::cube_upper(env, one, 0.04, diag::Variant::plain);
    CHECK(plain.n_star == 5);
    CHECK(plain.log_value == Catch::Approx(-8.0 - std::log(0.04)).epsilon(1e-12));
    CHECK(plain.log_value == Catch::Approx(-4.7811241751318).epsilon(1e-10));
    CHECK_FALSE(plain.center_free);

    auto sharp = diag::cube_upper(env, one, 0.04, diag::Variant::sharp);
    CHECK(sharp.log_value == Catch::Approx(-8.0 - 0.5 * std::log(0.04)).epsilon(1e-12));
    CHECK(sharp.log_value == Catch::Approx(-6.3905620875659).epsilon(1e-10));

    // log-convex refinement is tighter than the plain form by exactly log(1/eps)/2
    for (double eps : {0.01, 0.04, 0.2}) {
        auto p = diag::cube_upper(env, one, eps, diag::Variant::plain);
        auto s = diag::cube_upper(env, one, eps, diag::Variant::sharp);
        CHECK(p.log_value - s.log_value ==
              Catch::Approx(0.5 * std::log(1.0 / eps)).epsilon(1e-12));
    }

    // automatic variant picks the sharp form on a validated log-convex envelope
    CHECK(diag::cube_upper(env, one, 0.04).formula == Formula::cube_envelope_sharp);

    // at the upper edge the index is 1 and the growth term vanishes
    const double edge = 4.0 / pi;
    auto b = diag::cube_upper(env, one, edge * 0.999, diag::Variant::plain);
    CHECK(b.n_star == 1);
    CHECK(b.log_value == Catch::Approx(-std::log(edge * 0.999)).epsilon(1e-12));
}

TEST_CASE("ball bound values") {
    const StabilityIndex one(1.0);
    auto env = power_min(2.0);

    auto plain = diag::ball_upper(env, one, 0.1, diag::Variant::plain);
    CHECK(plain.n_star == 3);
    CHECK(plain.log_value == Catch::Approx(-3.0 - std::log(0.1)).epsilon(1e-12));
    CHECK(plain.log_value == Catch::Approx(-0.6974149070059).epsilon(1e-9));
    CHECK(plain.center_free);

    auto sharp = diag::ball_upper(env, one, 0.1, diag::Variant::sharp);
    CHECK(sharp.log_value ==
          Catch::Approx(-3.0 - 0.25 * std::log(0.1 * 0.1 * 3.0)).epsilon(1e-12));

    // admissibility guard uses the larger of the two profile values at 1
    const double phi1 = diag::cube_profile(env, one).value(1.0);
    const double psi1 = diag::ball_profile(env, one).value(1.0);
    const double edge = 1.0 / std::max(phi1, psi1);
    CHECK_THROWS_AS(diag::ball_upper(env, one, edge * 1.0001), std::domain_error);
    CHECK_NOTHROW(diag::ball_upper(env, one, edge * 0.9));
}

TEST_CASE("gaussian reduction of the ball machinery") {
    const StabilityIndex two(2.0);
    auto env = power_min(1.5);  // lambda_i = i^{-3}, exponent gamma/alpha
    // profile constant becomes one, so the profile is (sigma(x) sqrt(x))^{-1}
    CHECK(std::abs(diag::ball_profile_constant(two) - 1.0) < 1e-12);
    auto prof = diag::ball_profile(env, two);
    for (double x : {1.0, 2.0, 5.0, 20.0}) {
        CAPTURE(x);
        CHECK(prof.value(x) ==
              Catch::Approx(1.0 / (env(x) * std::sqrt(x))).epsilon(1e-12));
    }
    // and the bound agrees with the envelope-only recomputation
    const double eps = 0.053;  // stays clear of exact lattice boundaries
    const long eta = diag::ball_index(env, two, eps);
    long eta_ref = 0;
    for (long n = 1; n <= 10000; ++n)
        if (eps / (env(double(n)) * std::sqrt(double(n))) <= 1.0) eta_ref = n;
    CHECK(eta == eta_ref);
}

TEST_CASE("direct cube bound") {
    const StabilityIndex one(1.0);
    auto env = power_min(2.0);

    SECTION("single-term value") {
        auto b = diag::direct_cube_upper(env, one, 0.3, 1);
        CHECK(b.n_star == 1);
        CHECK(b.log_value ==
              Catch::Approx(std::log(0.3) + std::log(2.0 * density_at_zero(one)) -
                            std::log(env(1.0)))
                  .epsilon(1e-12));
        CHECK(b.explicit_constant);
    }
    SECTION("exhaustive scan oracle") {
        const double eps = 0.04;
        double best = 1e300;
        long best_n = 0;
        double acc = 0.0;
        for (long n = 1; n <= 400; ++n) {
            acc += std::log(env(double(n)));
            const double F =
                n * (std::log(eps) + std::log(2.0 * density_at_zero(one))) - acc;
            if (F < best) {
                best = F;
                best_n = n;
            }
        }
        auto b = diag::direct_cube_upper(env, one, eps, 400);
        CHECK(b.log_value == Catch::Approx(best).epsilon(1e-12));
        CHECK(b.n_star == best_n);
    }
    SECTION("direct minimum undercuts the envelope bound up to its constant") {
        // the envelope-route proof gives F(index) <= bound - log(profile(1))
        const double eps = 0.04;
        auto direct = diag::direct_cube_upper(env, one, eps, 400);
        auto envb = diag::cube_upper(env, one, eps, diag::Variant::plain);
        const double slack = -std::log(diag::cube_profile(env, one).value(1.0));
        CHECK(direct.log_value <= envb.log_value + slack + 1e-9);
    }
}

TEST_CASE("direct ball bound matches a brute-force scan") {
    const StabilityIndex two(2.0);
    auto env = power_min(1.5);  // gamma = 3 at alpha = 2
    const double eps = 0.1;
    double best = 1e300;
    long best_n = 0;
    double acc = 0.0;
    for (long n = 1; n <= 200; ++n) {
        acc += std::log(env(double(n)));
        const double ln_n = std::log(double(n));
        const double F1 = n * (std::log(eps) + std::log(diag::ball_profile_constant(two))) -
                          acc - 0.5 * ln_n - 0.5 * n * (ln_n - 1.0);
        if (F1 < best) {
            best = F1;
            best_n = n;
        }
    }
    auto b = diag::direct_ball_upper(env, two, eps, 200);
    CHECK(b.log_value == Catch::Approx(best).epsilon(1e-12));
    CHECK(b.n_star == best_n);
    CHECK(b.center_free);
}

TEST_CASE("monotonicity in eps") {
    const StabilityIndex one(1.0);
    auto env = power_min(2.0);

    SECTION("indices are nonincreasing in eps") {
        long prev_nu = 1L << 60, prev_eta = 1L << 60;
        for (double eps = 0.001; eps < 0.5; eps *= 1.35) {
            const long nu = diag::cube_index(env, one, eps);
            const long eta = diag::ball_index(env, one, eps);
            CHECK(nu <= prev_nu);
            CHECK(eta <= prev_eta);
            prev_nu = nu;
            prev_eta = eta;
        }
    }
    SECTION("between index jumps the envelope bounds move by the eps term alone") {
        // with the index pinned, the only eps dependence is the -log(eps) term;
        // shrinking balls pick up their decay through the index jumps, checked
        // globally on the direct route below
        for (double eps = 0.002; eps < 0.3; eps *= 1.17) {
            if (diag::cube_index(env, one, eps) == diag::cube_index(env, one, 1.01 * eps)) {
                const double d = diag::cube_upper(env, one, 1.01 * eps, diag::Variant::plain)
                                     .log_value -
                                 diag::cube_upper(env, one, eps, diag::Variant::plain).log_value;
                CHECK(d == Catch::Approx(-std::log(1.01)).epsilon(1e-10));
            }
            if (diag::ball_index(env, one, eps) == diag::ball_index(env, one, 1.01 * eps)) {
                const double d = diag::ball_upper(env, one, 1.01 * eps, diag::Variant::plain)
                                     .log_value -
                                 diag::ball_upper(env, one, eps, diag::Variant::plain).log_value;
                CHECK(d == Catch::Approx(-std::log(1.01)).epsilon(1e-10));
            }
        }
    }
    SECTION("direct bounds are globally nondecreasing in eps") {
        double prev = -1e300;
        for (double eps = 0.002; eps < 0.3; eps *= 1.17) {
            const double v = diag::direct_cube_upper(env, one, eps, 500).log_value;
            CHECK(v >= prev);
            prev = v;
        }
        prev = -1e300;
        for (double eps = 0.002; eps < 0.3; eps *= 1.17) {
            const double v = diag::direct_ball_upper(env, one, eps, 500).log_value;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("ball machinery rejects profiles that do not grow") {
    // exponent 0.4 makes the ball profile x^{0.4 - 0.5} decreasing
    auto env = power_min(0.4);
    CHECK_THROWS_AS(diag::ball_index(env, StabilityIndex(1.0), 0.1), std::domain_error);
}
