#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chainprice/scenario.hpp"
#include "fixtures.hpp"

using namespace chainprice;
using fixtures::five_firm;
using fixtures::model;
using fixtures::six_firm;

namespace {

// reference comparison rows are rounded to 4 decimals
void near(double got, double want) { CHECK(std::fabs(got - want) < 5e-4); }

Scenario merge12(std::string name, bool extra_edge) {
    Scenario s;
    s.name = std::move(name);
    MergerDelta m;
    m.firm_a = "1";
    m.firm_b = "2";
    if (extra_edge) m.extra_edges = {{"1+2", "3"}};
    s.merger = m;
    return s;
}

struct Row {
    double P, total, joint, pi3, pi4, pi5, cs, sw;
};

void check_base(const ComparisonReport& rep, const Row& r) {
    const auto& b = rep.base_report;
    near(b.P_star, r.P);
    near(b.total_profit, r.total);
    near(b.profits[0] + b.profits[1], r.joint);
    near(b.profits[2], r.pi3);
    near(b.profits[3], r.pi4);
    near(b.profits[4], r.pi5);
    near(b.consumer_surplus, r.cs);
    near(b.social_welfare, r.sw);
}

void check_outcome(const ScenarioOutcome& o, const Row& r) {
    near(o.report.P_star, r.P);
    near(o.report.total_profit, r.total);
    near(o.merged_joint_profit, r.joint);
    near(o.report.profits[o.model.net.index_of("3")], r.pi3);
    near(o.report.profits[o.model.net.index_of("4")], r.pi4);
    near(o.report.profits[o.model.net.index_of("5")], r.pi5);
    near(o.report.consumer_surplus, r.cs);
    near(o.report.social_welfare, r.sw);
}

ComparisonReport compare_five(double beta, const std::vector<Scenario>& scenarios) {
    return run_comparison(model(five_firm(), DemandSpec::power(1, 1, 1, beta)), scenarios);
}

} // namespace

TEST_CASE("five-firm merger comparison, D = (1-P)^4") {
    const auto rep = compare_five(0.25, {merge12("A", false), merge12("B", true)});
    check_base(rep, {0.5897, 0.0167, 0.0073, 0.0036, 0.0029, 0.0029, 0.0023, 0.0190});
    check_outcome(rep.outcomes[0], {0.5294, 0.0260, 0.0072, 0.0072, 0.0058, 0.0058, 0.0046, 0.0306});
    check_outcome(rep.outcomes[1], {0.5461, 0.0232, 0.0075, 0.0060, 0.0048, 0.0048, 0.0039, 0.0270});

    // A lowers the price but hurts the merging pair; B helps everyone
    const auto& A = rep.outcomes[0];
    CHECK(A.delta_P < 0);
    CHECK(A.socially_desirable == Verdict::Desirable);
    CHECK(A.privately_desirable == Verdict::Undesirable);
    CHECK(!A.pareto_improvement);
    const auto& B = rep.outcomes[1];
    CHECK(B.socially_desirable == Verdict::Desirable);
    CHECK(B.privately_desirable == Verdict::Desirable);
    CHECK(B.pareto_improvement);
}

TEST_CASE("five-firm merger comparison, D = (1-P)^(4/3)") {
    const auto rep = compare_five(0.75, {merge12("B", true)});
    check_base(rep, {0.8447, 0.0705, 0.0341, 0.0170, 0.0097, 0.0097, 0.0056, 0.0761});
    check_outcome(rep.outcomes[0], {0.8363, 0.0749, 0.0337, 0.0192, 0.0110, 0.0110, 0.0063, 0.0812});
    CHECK(rep.outcomes[0].socially_desirable == Verdict::Desirable);
    CHECK(rep.outcomes[0].privately_desirable == Verdict::Undesirable);
    CHECK(!rep.outcomes[0].pareto_improvement);
}

TEST_CASE("five-firm merger comparison, D = (1-P)^(3/4)") {
    const auto rep = compare_five(4.0 / 3, {merge12("B", true)});
    check_base(rep, {0.9231, 0.1348, 0.0699, 0.0350, 0.0150, 0.0150, 0.0064, 0.1412});
    check_outcome(rep.outcomes[0], {0.9288, 0.1281, 0.0713, 0.0306, 0.0131, 0.0131, 0.0056, 0.1337});
    // raising the price is privately profitable here but socially harmful
    CHECK(rep.outcomes[0].delta_P > 0);
    CHECK(rep.outcomes[0].socially_desirable == Verdict::Undesirable);
    CHECK(rep.outcomes[0].privately_desirable == Verdict::Desirable);
    CHECK(!rep.outcomes[0].pareto_improvement);
}

TEST_CASE("five-firm merger comparison, D = (1-P)^5") {
    const auto rep = compare_five(0.2, {merge12("A", false)});
    check_base(rep, {0.5283, 0.0123, 0.0053, 0.0026, 0.0022, 0.0022, 0.0018, 0.0142});
    check_outcome(rep.outcomes[0], {0.4681, 0.0199, 0.0054, 0.0054, 0.0045, 0.0045, 0.0038, 0.0237});
    CHECK(rep.outcomes[0].socially_desirable == Verdict::Desirable);
    CHECK(rep.outcomes[0].privately_desirable == Verdict::Desirable);
    CHECK(rep.outcomes[0].pareto_improvement);
}

TEST_CASE("verdicts are consistent with the reported deltas") {
    const auto rep = compare_five(0.25, {merge12("A", false), merge12("B", true)});
    for (const auto& o : rep.outcomes) {
        const double joint = o.merged_joint_profit - o.merged_pre_profit_sum;
        if (o.privately_desirable == Verdict::Desirable) CHECK(joint > 1e-9);
        if (o.privately_desirable == Verdict::Undesirable) CHECK(joint < -1e-9);
        if (o.socially_desirable == Verdict::Desirable) CHECK(o.delta_SW > 1e-9);
        if (o.socially_desirable == Verdict::Undesirable) CHECK(o.delta_SW < -1e-9);
        if (o.pareto_improvement) {
            CHECK(o.delta_CS > 1e-9);
            for (const auto& [_, d] : o.delta_profit) CHECK(d >= -1e-9);
        }
    }
}

TEST_CASE("only the tariff total matters for price, quantity and profits") {
    const auto base = model(six_firm(), DemandSpec::logit(1, 1));
    Scenario uniform, lump;
    uniform.name = "uniform";
    uniform.tariff = TariffDelta{{{"L", 0.01},
                                  {"T", 0.01},
                                  {"F", 0.01},
                                  {"C", 0.01},
                                  {"D", 0.01},
                                  {"R", 0.01}},
                                 0.0};
    lump.name = "lump";
    lump.tariff = TariffDelta{{}, 0.06};
    const auto rep = run_comparison(base, {uniform, lump});
    const auto& u = rep.outcomes[0];
    const auto& l = rep.outcomes[1];
    CHECK(u.tariff_total == doctest::Approx(0.06).epsilon(1e-14));
    CHECK(l.tariff_total == doctest::Approx(0.06).epsilon(1e-14));
    CHECK(u.report.P_star == doctest::Approx(l.report.P_star).epsilon(1e-11));
    CHECK(u.report.consumer_surplus ==
          doctest::Approx(l.report.consumer_surplus).epsilon(1e-10));
    for (int i = 0; i < 6; ++i)
        CHECK(u.report.profits[i] == doctest::Approx(l.report.profits[i]).epsilon(1e-9));
    // individual prices do move: tariffed firms pass the levy through
    CHECK(u.report.prices[0] == doctest::Approx(l.report.prices[0] + 0.01).epsilon(1e-9));
    // tariffs raise the price and shrink private welfare
    CHECK(u.delta_P > 0);
    CHECK(u.delta_CS < 0);
    CHECK(u.tariff_revenue == doctest::Approx(u.report.quantity * 0.06).epsilon(1e-12));
    CHECK(u.total_welfare ==
          doctest::Approx(u.report.social_welfare + u.tariff_revenue).epsilon(1e-12));
}

TEST_CASE("apply_scenario: merged costs and explicit overrides") {
    auto base = model(five_firm(), DemandSpec::power(1, 1, 1, 0.25));
    base.costs = {0.02, 0.03, 0.01, 0.0, 0.0};

    SUBCASE("default merged cost is the sum of constituents") {
        const auto m = apply_scenario(base, merge12("A", false));
        CHECK(m.costs[m.net.index_of("1+2")] == doctest::Approx(0.05).epsilon(1e-14));
        CHECK(m.costs[m.net.index_of("3")] == doctest::Approx(0.01).epsilon(1e-14));
    }
    SUBCASE("merged cost override") {
        auto s = merge12("A", false);
        s.merger->merged_cost = 0.04;
        const auto m = apply_scenario(base, s);
        CHECK(m.costs[m.net.index_of("1+2")] == doctest::Approx(0.04).epsilon(1e-14));
    }
    SUBCASE("explicit post-merger network replaces the closure rule") {
        auto s = merge12("X", false);
        BoolMatrix a(4, std::vector<bool>(4, false));
        a[0][1] = a[0][2] = a[1][2] = a[0][3] = true;
        s.merger->explicit_network = a;
        s.merger->explicit_labels = {"1+2", "3", "4", "5"};
        const auto m = apply_scenario(base, s);
        CHECK(m.net.edge(0, 3));
        CHECK(path_counts(m.net).totals == std::vector<std::uint64_t>{4, 4, 1, 0});
    }
    SUBCASE("malformed scenarios are rejected") {
        Scenario both = merge12("both", false);
        both.tariff = TariffDelta{};
        CHECK_THROWS_AS(apply_scenario(base, both), InputError);
        Scenario empty;
        empty.name = "empty";
        CHECK_THROWS_AS(apply_scenario(base, empty), InputError);
        auto bad = merge12("bad", false);
        bad.merger->firm_b = "9";
        CHECK_THROWS_AS(apply_scenario(base, bad), InputError);
        Scenario badtariff;
        badtariff.name = "badtariff";
        badtariff.tariff = TariffDelta{{{"Z", 0.1}}, 0};
        CHECK_THROWS_AS(apply_scenario(base, badtariff), InputError);
    }
}

TEST_CASE("merging two independent monopolists lowers the final price") {
    const auto base = model(canonical(CanonicalKind::Empty, 3), DemandSpec::linear(1, 1));
    const auto rep = run_comparison(base, {merge12("A", false)});
    CHECK(rep.base_report.P_star == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(rep.outcomes[0].report.P_star == doctest::Approx(2.0 / 3).epsilon(1e-12));
    // the pair earns 2/16 before and only 1/9 after, so no Pareto improvement
    CHECK(rep.outcomes[0].socially_desirable == Verdict::Desirable);
    CHECK(rep.outcomes[0].privately_desirable == Verdict::Undesirable);
    CHECK(!rep.outcomes[0].pareto_improvement);
}

TEST_CASE("tariff sensitivity") {
    SUBCASE("single linear monopolist: dP/dC = 1/2") {
        auto m = model(canonical(CanonicalKind::Empty, 1), DemandSpec::linear(1, 1), 0.2);
        const auto s = tariff_sensitivity(m, 0.0);
        CHECK(s.dP_dC == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(s.dprofit_dC[0] < 0);
        CHECK(s.dTW_dP < 0);
        // dTW/dP = D'(P*)(P* - C) with no tariff in place
        const auto rep = solve(m);
        CHECK(s.dTW_dP == doctest::Approx(-(rep.P_star - 0.2)).epsilon(1e-10));
    }
    SUBCASE("analytic dP/dC matches a finite difference") {
        auto m = model(six_firm(), DemandSpec::logit(1, 1), 0.5);
        const auto s = tariff_sensitivity(m);
        const double h = 1e-5;
        auto up = m, down = m;
        up.c0 += h;
        down.c0 -= h;
        const double fd = (solve(up).P_star - solve(down).P_star) / (2 * h);
        CHECK(s.dP_dC == doctest::Approx(fd).epsilon(1e-6));
        CHECK(s.dP_dC > 0);
        CHECK(s.dP_dC < 1); // complements dampen pass-through below one-for-one here
    }
    SUBCASE("tariff part of costs shifts the welfare slope") {
        auto m = model(canonical(CanonicalKind::Empty, 1), DemandSpec::linear(1, 1), 0.2);
        const auto s = tariff_sensitivity(m, 0.2);
        const auto rep = solve(m);
        CHECK(s.dTW_dP == doctest::Approx(-rep.P_star).epsilon(1e-10));
    }
}

TEST_CASE("deadweight loss sweep over canonical networks") {
    const auto rows = dwl_sweep(DemandSpec::linear(1, 1), 1, 10,
                                {CanonicalKind::Empty, CanonicalKind::Chain});
    REQUIRE(rows.size() == 20);
    double prev_empty = -1, prev_chain = -1;
    for (const auto& r : rows) {
        // linear closed forms: dwl = P*^2 / 2, empty P* = n/(n+1), chain P* = (2^n-1)/2^n
        CHECK(r.dwl == doctest::Approx(r.P_star * r.P_star / 2).epsilon(1e-10));
        if (r.kind == CanonicalKind::Empty) {
            CHECK(r.P_star == doctest::Approx(r.n / (r.n + 1.0)).epsilon(1e-12));
            CHECK(r.dwl > prev_empty);
            prev_empty = r.dwl;
        } else {
            const double pow2 = std::ldexp(1.0, r.n);
            CHECK(r.P_star == doctest::Approx((pow2 - 1) / pow2).epsilon(1e-12));
            CHECK(r.dwl > prev_chain);
            CHECK(r.dwl >= prev_empty - 1e-12); // chains marginalize at least as much
            prev_chain = r.dwl;
        }
    }
    CHECK(std::fabs(rows[18].dwl - 0.4132) < 5e-4);  // empty(10)
    CHECK(std::fabs(rows[19].dwl - 0.4990) < 5e-4);  // chain(10)
    CHECK_THROWS_AS(dwl_sweep(DemandSpec::logit(1, 1), 1, 30, {CanonicalKind::Chain}), InputError);
    CHECK_THROWS_AS(dwl_sweep(DemandSpec::linear(1, 1), 5, 2, {CanonicalKind::Chain}), InputError);
}
