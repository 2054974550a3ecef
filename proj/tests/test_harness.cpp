#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risklab/harness.hpp"

using namespace risklab;

TEST_CASE("mc excess risk degenerate cases") {
    HardPair pair = thm2_pair(1.0, 2.0, 3);
    SUBCASE("stub returning the optimum scores zero with zero width") {
        Learner stub = [&pair](const DataSet&) { return Vec::Constant(1, pair.wstar0); };
        ExperimentResult res = mc_excess_risk(stub, 2.0, pair.d0, 5, 20, 1);
        CHECK(res.mean_excess == 0.0);
        CHECK(res.half_width_95 == 0.0);
    }
    SUBCASE("zero learner ignores the data, excess is exact") {
        Learner zero = [](const DataSet& s) { return Vec::Zero(s.dim); };
        ExperimentResult res = mc_excess_risk(zero, 2.0, pair.d0, 5, 20, 1);
        CHECK(res.mean_excess == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(res.half_width_95 <= 1e-13);
    }
    SUBCASE("same seed and config reproduce bit-identical results") {
        LearnerSpec spec{LearnerKind::erm, 2.0, 1.0, 1.0};
        ExperimentResult a = mc_excess_risk(spec, pair.d1, 20, 40, 99, 1);
        ExperimentResult b = mc_excess_risk(spec, pair.d1, 20, 40, 99, 4);
        CHECK(a.mean_excess == b.mean_excess);
        CHECK(a.half_width_95 == b.half_width_95);
        CHECK(a.config_digest == b.config_digest);
    }
}

TEST_CASE("minimax over the one-dimensional pair") {
    SUBCASE("zero learner hits the exact stratified mean") {
        LearnerSpec spec{LearnerKind::zero, 2.0, 1.0, 1.0};
        ExperimentResult res = minimax_thm2(spec, 1.0, 2.0, 3, 50, 3, 1);
        CHECK(std::abs(res.mean_excess - 26.0 / 27.0) <= 1e-12);
        CHECK(res.half_width_95 <= 1e-12);
        CHECK(res.mean_excess >= 0.0);
    }
    SUBCASE("stub returning B pays only on the second branch") {
        HardPair pair = thm2_pair(1.0, 2.0, 3);
        Learner stub = [](const DataSet&) { return Vec::Constant(1, 2.0); };
        ExperimentResult res = minimax_thm2(stub, 1.0, 2.0, 3, 30, 4, 1);
        const double e1 = excess_risk(Vec::Constant(1, 2.0), moments_of(pair.d1), 2.0);
        CHECK(res.mean_excess == doctest::Approx(0.5 * e1).epsilon(1e-12));
        CHECK(res.half_width_95 <= 1e-12);
    }
}

TEST_CASE("minimax over the sign family") {
    SUBCASE("zero learner has constant exact excess b^2 Y^2") {
        LearnerSpec spec{LearnerKind::zero, 2.0, 1.0, 1.0};
        ExperimentResult res = minimax_thm3(spec, 1.0, 2.0, 24, 10, 40, 5, 1);
        CHECK(res.mean_excess == doctest::Approx(10.0 / 144.0).epsilon(1e-12));
        CHECK(res.half_width_95 <= 1e-12);
    }
    SUBCASE("mismatched-sign stub matches the brute-force expectation") {
        // Stub returns the optimum of its own independent sign draw. Oracle:
        // enumerate all (sigma, sigma') pairs at d' <= 4.
        const double Y = 1.0, B = 2.0;
        const long m = 24;
        const int d = 4;  // forces d' = 4
        auto [d_prime, b] = thm3_dims(Y, B, m, d);
        REQUIRE(d_prime == 4);
        const double v = std::min(Y * b, B / std::sqrt(static_cast<double>(d_prime)));
        double brute = 0.0;
        for (int s = 0; s < (1 << d_prime); ++s)
            for (int t = 0; t < (1 << d_prime); ++t) {
                double dist = 0.0;
                for (int i = 0; i < d_prime; ++i) {
                    const double a = (s >> i) & 1 ? v : -v;
                    const double c = (t >> i) & 1 ? v : -v;
                    dist += (a - c) * (a - c) / d_prime;
                }
                brute += dist;
            }
        brute /= static_cast<double>(1 << d_prime) * (1 << d_prime);
        CHECK(brute == doctest::Approx(2.0 * v * v).epsilon(1e-12));

        RngStream stub_rng(777);
        Learner stub = [&](const DataSet& s) {
            Vec w = Vec::Zero(s.dim);
            for (int i = 0; i < d_prime; ++i) w[i] = stub_rng.next_bool() ? v : -v;
            return w;
        };
        ExperimentResult res = minimax_thm3(stub, Y, B, m, d, 4000, 6, 1);
        CHECK(std::abs(res.mean_excess - brute) <= 4.0 * res.half_width_95);
        CHECK(res.mean_excess >= 0.0);
    }
}

TEST_CASE("theoretical envelope") {
    CHECK(theoretical_envelope(1.0, 2.0, 10, 100).lower == doctest::Approx(0.14).epsilon(1e-14));
    CHECK(theoretical_envelope(1.0, 100.0, 1, 100).lower == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(theoretical_envelope(1.0, 2.0, 10, 1000000000000L).lower < 1e-5);
    Envelope env = theoretical_envelope(1.0, 2.0, 10, 100);
    CHECK(env.upper >= env.lower * (1.0 - 1e-12));
    CHECK_THROWS_AS(theoretical_envelope(-1.0, 2.0, 10, 100), std::invalid_argument);
}

TEST_CASE("rate fitting") {
    SUBCASE("exact inverse power law") {
        RateFit fit = fit_rate({{10, 0.1}, {100, 0.01}, {1000, 0.001}});
        CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("half rate") {
        RateFit fit = fit_rate({{100, 0.1}, {400, 0.05}, {1600, 0.025}});
        CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("five percent multiplicative noise moves the slope little") {
        RateFit fit = fit_rate({{10, 0.1 * 1.05}, {100, 0.01 * 0.95}, {1000, 0.001 * 1.05}});
        CHECK(std::abs(fit.slope - (-1.0)) <= 0.1);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(fit_rate({{10, 0.1}, {10, 0.2}}), std::invalid_argument);
        CHECK_THROWS_AS(fit_rate({{10, 0.1}, {100, -0.2}}), std::invalid_argument);
    }
}

TEST_CASE("digest is stable") {
    CHECK(digest("abc") == digest("abc"));
    CHECK(digest("abc") != digest("abd"));
    CHECK(digest("abc").size() == 16);
}
