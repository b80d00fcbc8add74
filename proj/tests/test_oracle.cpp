#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chainprice/oracle.hpp"
#include "fixtures.hpp"

using namespace chainprice;
using fixtures::diamond;
using fixtures::model;
using fixtures::six_firm;

TEST_CASE("no profitable unilateral deviation on the six-firm linear model") {
    const auto m = model(six_firm(), DemandSpec::linear(1, 1));
    const auto rep = solve(m);
    for (int i = 0; i < 6; ++i) {
        const DeviationCurve c = deviation_check(m, rep, i);
        CHECK(c.pass);
        CHECK(c.dropped_points == 0);
        CHECK(std::fabs(c.best_price - rep.prices[i]) <= 0.51 * rep.markups[i] / 100);
        CHECK(c.best_profit <= rep.profits[i] * (1 + 1e-6) + 1e-12);
        CHECK(c.deviation_prices.size() >= 101);
    }
}

TEST_CASE("no profitable unilateral deviation on the two-firm logit chain") {
    const auto m = model(canonical(CanonicalKind::Chain, 2), DemandSpec::logit(1, 1));
    const auto rep = solve(m);
    for (int i = 0; i < 2; ++i) {
        const DeviationCurve c = deviation_check(m, rep, i, 0.4, 401);
        CHECK(c.pass);
        // the induced final price moves with the deviation
        CHECK(c.induced_final_prices.front() < c.induced_final_prices.back());
    }
}

TEST_CASE("deviation check rejects a non-equilibrium price profile") {
    const auto m = model(canonical(CanonicalKind::Empty, 2), DemandSpec::linear(1, 1));
    EquilibriumReport fake;
    fake.P_star = 0.4;
    fake.prices = {0.2, 0.2};
    fake.markups = {0.2, 0.2};
    fake.profits = {0.12, 0.12};
    fake.quantity = 0.6;
    const DeviationCurve c = deviation_check(m, fake, 0);
    CHECK(!c.pass);
    CHECK(c.best_profit - c.equilibrium_profit >= 1e-2);
}

TEST_CASE("deviation check validates its inputs") {
    const auto m = model(six_firm(), DemandSpec::linear(1, 1));
    const auto rep = solve(m);
    CHECK_THROWS_AS(deviation_check(m, rep, -1), InputError);
    CHECK_THROWS_AS(deviation_check(m, rep, 6), InputError);
    CHECK_THROWS_AS(deviation_check(m, rep, 0, 0.1, 50), InputError);
}

TEST_CASE("backward induction on the two-firm logit chain") {
    const auto m = model(canonical(CanonicalKind::Chain, 2), DemandSpec::logit(1, 1));
    const ChainSolution sol = chain_backward_induction(m);
    CHECK(sol.final_price == doctest::Approx(2.3082).epsilon(1e-3));
    CHECK(sol.prices[0] == doctest::Approx(1.2088).epsilon(1e-3));
    CHECK(sol.prices[1] == doctest::Approx(1.0994).epsilon(1e-3));
    const auto rep = solve(m);
    CHECK(sol.final_price == doctest::Approx(rep.P_star).epsilon(1e-4));
}

// nested argmax jitter compounds roughly as sqrt per level, so the
// attainable accuracy is ~1e-4 at depth 2 and ~1e-2 at depth 3
TEST_CASE("backward induction on the two-firm linear chain") {
    const auto m = model(canonical(CanonicalKind::Chain, 2), DemandSpec::linear(1, 1));
    const ChainSolution sol = chain_backward_induction(m);
    CHECK(sol.final_price == doctest::Approx(0.75).epsilon(1e-4));
    CHECK(sol.prices[0] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(sol.prices[1] == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("backward induction matches the solver on a three-firm power chain") {
    const auto m = model(canonical(CanonicalKind::Chain, 3), DemandSpec::power(1, 1, 1, 0.7));
    const ChainSolution sol = chain_backward_induction(m);
    const auto rep = solve(m);
    CHECK(sol.final_price == doctest::Approx(rep.P_star).epsilon(5e-3));
    for (int i = 0; i < 3; ++i)
        CHECK(sol.prices[i] == doctest::Approx(rep.prices[i]).epsilon(2e-2));
}

TEST_CASE("backward induction guards its domain") {
    CHECK_THROWS_AS(
        chain_backward_induction(model(canonical(CanonicalKind::Chain, 5), DemandSpec::linear(1, 1))),
        DepthTooLarge);
    CHECK_THROWS_AS(chain_backward_induction(model(diamond(), DemandSpec::linear(1, 1))),
                    InputError);
}

TEST_CASE("diamond oracle agrees with the solver exactly") {
    const DiamondLinearOracle o = diamond_linear_oracle();
    CHECK(o.final_price == doctest::Approx(7.0 / 8).epsilon(1e-14));
    CHECK(o.prices[0] == doctest::Approx(3.0 / 8).epsilon(1e-14));
    CHECK(o.prices[1] == doctest::Approx(1.0 / 4).epsilon(1e-14));
    CHECK(o.prices[2] == doctest::Approx(1.0 / 8).epsilon(1e-14));
    CHECK(o.prices[3] == o.prices[2]);
    CHECK(o.br4_p2 == doctest::Approx(-0.5));

    const auto rep = solve(model(diamond(), DemandSpec::linear(1, 1)));
    CHECK(rep.P_star == doctest::Approx(o.final_price).epsilon(1e-12));
    for (int i = 0; i < 4; ++i)
        CHECK(rep.prices[i] == doctest::Approx(o.prices[i]).epsilon(1e-12));

    // the best responses reproduce the on-path prices at (p1*, p2*)
    CHECK(o.br3_const + o.br3_p1 * o.prices[0] == doctest::Approx(o.prices[2]).epsilon(1e-14));
    CHECK(o.br4_const + o.br4_p1 * o.prices[0] + o.br4_p2 * o.prices[1] ==
          doctest::Approx(o.prices[3]).epsilon(1e-14));
}
