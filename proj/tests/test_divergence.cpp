#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "risklab/divergence.hpp"
#include "risklab/distributions.hpp"

using namespace risklab;

TEST_CASE("kl closed forms") {
    FiniteLaw p = make_law({0.75, 0.25});
    FiniteLaw q = make_law({0.25, 0.75});
    CHECK(kl(p, p) == 0.0);
    CHECK(kl(p, q) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
    CHECK(kl(p, q) <= chi_squared(p, q));
}

TEST_CASE("chi-squared closed forms") {
    FiniteLaw p = make_law({0.75, 0.25});
    FiniteLaw q = make_law({0.25, 0.75});
    CHECK(chi_squared(p, p) == 0.0);
    CHECK(chi_squared(p, q) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("infinite divergence on absolute-continuity violation") {
    FiniteLaw p = make_law({0.5, 0.5});
    FiniteLaw q = make_law({1.0, 0.0});
    CHECK(std::isinf(kl(p, q)));
    CHECK(std::isinf(chi_squared(p, q)));
    CHECK(kl(q, p) < std::numeric_limits<double>::infinity());
}

TEST_CASE("marginal chi-squared bound evaluations") {
    CHECK(thm2_marginal_chi2_bound(1.0, 1.0 / 9.0) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(thm2_marginal_chi2_bound(0.4, 1.0 / 30.0) == doctest::Approx(2.0 / 55.0).epsilon(1e-14));
    CHECK(thm2_marginal_chi2_bound(0.5, 1e-12) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(thm2_marginal_chi2_bound(0.2, 0.3), std::invalid_argument);
}

TEST_CASE("marginal bound matches the generic divergence on the pair") {
    HardPair pair = thm2_pair(1.0, 2.0, 10);
    auto [m0, m1] = x_marginal_pair(pair.d0, pair.d1);
    CHECK(std::abs(chi_squared(m0, m1) - thm2_marginal_chi2_bound(pair.alpha, pair.gamma)) <=
          1e-12);
}

TEST_CASE("per-example kl bound") {
    CHECK(thm3_per_example_kl_bound(0.0, 3) == 0.0);
    SUBCASE("at the schedule's bias the m-sample kl is exactly 1/m") {
        const long m = 50;
        const int d_prime = 7;
        const double b = std::sqrt(static_cast<double>(d_prime) / (6.0 * m));
        CHECK(m * thm3_per_example_kl_bound(b, d_prime) == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("slack against the exact divergence at the cap") {
        auto [plus, minus] = thm3_conditional_laws(0.5, 1);
        CHECK(chi_squared(plus, minus) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
        CHECK(thm3_per_example_kl_bound(0.5, 1) == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(kl(plus, minus) <= thm3_per_example_kl_bound(0.5, 1));
    }
    CHECK_THROWS_AS(thm3_per_example_kl_bound(0.6, 1), std::invalid_argument);
}

TEST_CASE("pinsker separation factor") {
    CHECK(pinsker_separation(0.0) == 1.0);
    CHECK(pinsker_separation(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    // total kl of 1 gives the familiar 1 - sqrt(1/2), about 0.29; halved
    // that is the ~0.14 prefactor of the slow-rate chain.
    CHECK(pinsker_separation(1.0) == doctest::Approx(0.2928932188134524).epsilon(1e-14));
    CHECK(0.5 * pinsker_separation(1.0) >= 0.14);
}

TEST_CASE("law validation") {
    CHECK_THROWS_AS(make_law({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(make_law({1.2, -0.2}), std::invalid_argument);
}
