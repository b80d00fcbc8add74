#include "chainprice/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace chainprice {

namespace {

Verdict verdict_of(double delta) {
    if (std::fabs(delta) < 1e-9) return Verdict::Neutral;
    return delta > 0 ? Verdict::Desirable : Verdict::Undesirable;
}

} // namespace

MarketModel apply_scenario(const MarketModel& base, const Scenario& scenario) {
    if (scenario.merger && scenario.tariff)
        throw InputError("scenario '" + scenario.name + "' mixes merger and tariff deltas");
    if (!scenario.merger && !scenario.tariff)
        throw InputError("scenario '" + scenario.name + "' has no delta");

    MarketModel out = base;
    if (scenario.tariff) {
        const auto& t = *scenario.tariff;
        out.c0 += t.t0;
        for (const auto& [label, ti] : t.tariffs) {
            const int idx = base.net.index_of(label);
            if (idx < 0) throw InputError("tariff on unknown firm: " + label);
            out.costs[idx] += ti;
        }
        out.check();
        return out;
    }

    const auto& m = *scenario.merger;
    const int i = base.net.index_of(m.firm_a);
    const int j = base.net.index_of(m.firm_b);
    if (i < 0 || j < 0)
        throw InputError("merger references unknown firm: " + m.firm_a + "/" + m.firm_b);

    if (m.explicit_network) {
        out.net = validate(*m.explicit_network, m.explicit_labels);
    } else {
        // resolve extra edges against the post-merge label set
        InfluenceNetwork merged = merge_nodes(base.net, i, j);
        std::vector<std::pair<int, int>> extra;
        for (const auto& [from, to] : m.extra_edges) {
            const int fi = merged.index_of(from);
            const int ti = merged.index_of(to);
            if (fi < 0 || ti < 0)
                throw InputError("extra edge references unknown firm: " + from + "->" + to);
            extra.emplace_back(fi, ti);
        }
        out.net = merge_nodes(base.net, i, j, extra);
    }

    const double merged_cost = m.merged_cost.value_or(base.costs[i] + base.costs[j]);
    out.costs.clear();
    const std::string merged_label = base.net.label(i) + "+" + base.net.label(j);
    for (int u = 0; u < out.net.size(); ++u) {
        const std::string& l = out.net.label(u);
        if (l == merged_label) {
            out.costs.push_back(merged_cost);
        } else {
            const int b = base.net.index_of(l);
            if (b < 0) throw InputError("post-merger firm has no base counterpart: " + l);
            out.costs.push_back(base.costs[b]);
        }
    }
    out.check();
    return out;
}

ComparisonReport run_comparison(const MarketModel& base, const std::vector<Scenario>& scenarios,
                                double tol) {
    ComparisonReport rep{base, solve(base, tol), {}};
    for (const auto& sc : scenarios) {
        ScenarioOutcome o;
        o.name = sc.name;
        o.model = apply_scenario(base, sc);
        o.report = solve(o.model, tol);

        if (sc.tariff) {
            o.tariff_total = sc.tariff->t0;
            for (const auto& [_, ti] : sc.tariff->tariffs) o.tariff_total += ti;
        }
        o.tariff_revenue = o.report.quantity * o.tariff_total;
        o.total_welfare = o.report.social_welfare + o.tariff_revenue;

        o.delta_P = o.report.P_star - rep.base_report.P_star;
        o.delta_CS = o.report.consumer_surplus - rep.base_report.consumer_surplus;
        o.delta_SW = o.report.social_welfare - rep.base_report.social_welfare;
        o.delta_total_profit = o.report.total_profit - rep.base_report.total_profit;

        bool all_firms_up = true;
        if (sc.merger) {
            const int bi = base.net.index_of(sc.merger->firm_a);
            const int bj = base.net.index_of(sc.merger->firm_b);
            const std::string merged_label =
                base.net.label(bi) + "+" + base.net.label(bj);
            int mi = o.model.net.index_of(merged_label);
            if (mi < 0 && sc.merger->explicit_network) {
                // explicit networks may name the merged node differently;
                // fall back to the node absent from the base labels
                for (int u = 0; u < o.model.net.size(); ++u)
                    if (base.net.index_of(o.model.net.label(u)) < 0) mi = u;
            }
            if (mi < 0) throw InputError("cannot locate merged entity in scenario " + sc.name);
            o.merged_joint_profit = o.report.profits[mi];
            o.merged_pre_profit_sum = rep.base_report.profits[bi] + rep.base_report.profits[bj];
            const double joint_delta = o.merged_joint_profit - o.merged_pre_profit_sum;
            o.delta_profit[base.net.label(bi)] = joint_delta;
            o.delta_profit[base.net.label(bj)] = joint_delta;
            o.privately_desirable = verdict_of(joint_delta);
            if (joint_delta < -1e-9) all_firms_up = false;
            for (int u = 0; u < o.model.net.size(); ++u) {
                if (u == mi) continue;
                const int b = base.net.index_of(o.model.net.label(u));
                const double d = o.report.profits[u] - rep.base_report.profits[b];
                o.delta_profit[o.model.net.label(u)] = d;
                if (d < -1e-9) all_firms_up = false;
            }
        } else {
            for (int u = 0; u < o.model.net.size(); ++u) {
                const double d = o.report.profits[u] - rep.base_report.profits[u];
                o.delta_profit[o.model.net.label(u)] = d;
                if (d < -1e-9) all_firms_up = false;
            }
            o.privately_desirable = verdict_of(o.delta_total_profit);
        }
        o.socially_desirable = verdict_of(o.delta_SW);
        o.pareto_improvement = all_firms_up && o.delta_CS > 1e-9;
        rep.outcomes.push_back(std::move(o));
    }
    return rep;
}

TariffSensitivity tariff_sensitivity(const MarketModel& model, double tariff_total, double tol) {
    const EquilibriumReport base = solve(model, tol);
    const PathCounts pc = path_counts(model.net);
    const int K = std::max(depth(model.net), 1);
    const int n = model.net.size();

    TariffSensitivity s;
    if (n == 0) {
        s.dP_dC = 1;
        s.dTW_dP = demand_deriv(model.demand, base.P_star) *
                   (base.P_star - (model.total_cost() - tariff_total));
        return s;
    }

    const GkTable t = gk_table(model.demand, base.P_star, K, true);
    double slope = 0;
    for (int k = 0; k < K; ++k) slope += static_cast<double>(pc.totals[k]) * t.derivs[k];
    s.dP_dC = 1.0 / (1.0 - slope);

    const double h = 1e-6 * std::max({1.0, model.total_cost()});
    MarketModel up = model, down = model;
    up.c0 += h;
    double span = 2 * h;
    if (model.c0 - h >= 0) {
        down.c0 -= h;
    } else {
        span = h; // forward difference at the C >= 0 boundary
    }
    const EquilibriumReport ru = solve(up, tol);
    const EquilibriumReport rd = solve(down, tol);
    s.dprofit_dC.resize(n);
    for (int i = 0; i < n; ++i) s.dprofit_dC[i] = (ru.profits[i] - rd.profits[i]) / span;

    s.dTW_dP = demand_deriv(model.demand, base.P_star) *
               (base.P_star - (model.total_cost() - tariff_total));
    return s;
}

std::vector<DwlSweepRow> dwl_sweep(const DemandSpec& demand, int n_min, int n_max,
                                   const std::vector<CanonicalKind>& kinds, double C) {
    if (n_min < 0 || n_max < n_min) throw InputError("bad size range for sweep");
    const bool closed_form =
        demand.family() == DemandFamily::Linear || demand.family() == DemandFamily::Power;
    const int cap = closed_form ? 20 : 16;
    if (n_max > cap) throw InputError("sweep size exceeds the solver cap for this family");

    std::vector<DwlSweepRow> rows;
    for (int n = n_min; n <= n_max; ++n)
        for (auto kind : kinds) {
            MarketModel m{canonical(kind, n), std::vector<double>(n, 0.0), C, demand};
            const EquilibriumReport r = closed_form ? solve_closed_form(m) : solve(m);
            rows.push_back({n, kind, r.P_star, r.deadweight_loss});
        }
    return rows;
}

} // namespace chainprice
