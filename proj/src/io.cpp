#include "chainprice/io.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace chainprice {

using nlohmann::json;

std::string num12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string num4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

DemandSpec parse_demand(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw InputError("demand block must be an object with a \"family\" field");
    const std::string fam = j.at("family").get<std::string>();
    auto num = [&](const char* key, double fallback, bool required) {
        if (!j.contains(key)) {
            if (required) throw InputError(std::string("demand is missing parameter: ") + key);
            return fallback;
        }
        return j.at(key).get<double>();
    };
    if (fam == "linear") return DemandSpec::linear(num("a", 1, true), num("b", 1, true));
    if (fam == "power")
        return DemandSpec::power(num("d", 1, false), num("a", 1, true), num("b", 1, true),
                                 num("beta", 1, true));
    if (fam == "logit") return DemandSpec::logit(num("d", 1, false), num("alpha", 1, true));
    if (fam == "exponential")
        return DemandSpec::exponential(num("a", 1, true), num("b", 1, true),
                                       num("alpha", 1, true));
    throw InputError("unknown demand family: " + fam);
}

MarketModel parse_model(const json& j) {
    if (!j.is_object()) throw InputError("model must be a JSON object");
    if (!j.contains("firms")) throw InputError("model is missing \"firms\"");
    std::vector<std::string> labels;
    std::vector<double> costs;
    for (const auto& f : j.at("firms")) {
        labels.push_back(f.at("name").get<std::string>());
        costs.push_back(f.contains("cost") ? f.at("cost").get<double>() : 0.0);
    }
    const int n = static_cast<int>(labels.size());

    BoolMatrix adj(n, std::vector<bool>(n, false));
    std::set<std::pair<int, int>> seen;
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw InputError("edge must be a [from,to] pair");
            const std::string from = e[0].get<std::string>();
            const std::string to = e[1].get<std::string>();
            int fi = -1, ti = -1;
            for (int i = 0; i < n; ++i) {
                if (labels[i] == from) fi = i;
                if (labels[i] == to) ti = i;
            }
            if (fi < 0) throw InputError("edge references unknown firm: " + from);
            if (ti < 0) throw InputError("edge references unknown firm: " + to);
            if (!seen.insert({fi, ti}).second)
                throw InputError("duplicate edge: " + from + "->" + to);
            adj[fi][ti] = true;
        }
    }

    MarketModel m{validate(adj, labels), std::move(costs),
                  j.contains("c0") ? j.at("c0").get<double>() : 0.0,
                  parse_demand(j.at("demand"))};
    return m;
}

MarketModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return parse_model(j);
}

ScenarioFile parse_scenario_file(const json& j) {
    ScenarioFile f{parse_model(j.at("base")), {}};
    if (!j.contains("scenarios")) return f;
    for (const auto& s : j.at("scenarios")) {
        Scenario sc;
        sc.name = s.contains("name") ? s.at("name").get<std::string>()
                                     : "scenario-" + std::to_string(f.scenarios.size() + 1);
        if (s.contains("merge")) {
            MergerDelta m;
            const auto& pair = s.at("merge");
            if (!pair.is_array() || pair.size() != 2)
                throw InputError("\"merge\" must name two firms");
            m.firm_a = pair[0].get<std::string>();
            m.firm_b = pair[1].get<std::string>();
            if (s.contains("extra_edges"))
                for (const auto& e : s.at("extra_edges"))
                    m.extra_edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
            if (s.contains("merged_cost")) m.merged_cost = s.at("merged_cost").get<double>();
            if (s.contains("network")) {
                // fully explicit post-merger adjacency
                const auto& net = s.at("network");
                std::vector<std::string> labels;
                for (const auto& fr : net.at("firms")) labels.push_back(fr.get<std::string>());
                const int n = static_cast<int>(labels.size());
                BoolMatrix adj(n, std::vector<bool>(n, false));
                for (const auto& e : net.at("edges")) {
                    int fi = -1, ti = -1;
                    for (int i = 0; i < n; ++i) {
                        if (labels[i] == e[0].get<std::string>()) fi = i;
                        if (labels[i] == e[1].get<std::string>()) ti = i;
                    }
                    if (fi < 0 || ti < 0) throw InputError("explicit network edge unknown firm");
                    adj[fi][ti] = true;
                }
                m.explicit_network = adj;
                m.explicit_labels = labels;
            }
            sc.merger = std::move(m);
        }
        if (s.contains("tariffs") || s.contains("t0")) {
            TariffDelta t;
            if (s.contains("tariffs"))
                for (const auto& [k, v] : s.at("tariffs").items()) t.tariffs[k] = v.get<double>();
            if (s.contains("t0")) t.t0 = s.at("t0").get<double>();
            sc.tariff = std::move(t);
        }
        if (!sc.merger && !sc.tariff)
            throw InputError("scenario '" + sc.name + "' has neither merge nor tariffs");
        f.scenarios.push_back(std::move(sc));
    }
    return f;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return parse_scenario_file(j);
}

json report_to_json(const EquilibriumReport& r, const MarketModel& m) {
    json firms = json::array();
    for (int i = 0; i < m.net.size(); ++i)
        firms.push_back({{"name", m.net.label(i)},
                         {"price", r.prices[i]},
                         {"markup", r.markups[i]},
                         {"influentiality", r.markups[i]},
                         {"profit", r.profits[i]}});
    return json{{"P_star", r.P_star},
                {"quantity", r.quantity},
                {"firms", firms},
                {"total_profit", r.total_profit},
                {"consumer_surplus", r.consumer_surplus},
                {"deadweight_loss", r.deadweight_loss},
                {"social_welfare", r.social_welfare},
                {"residual", r.residual},
                {"iterations", r.iterations}};
}

EquilibriumReport report_from_json(const json& j) {
    EquilibriumReport r;
    r.P_star = j.at("P_star").get<double>();
    r.quantity = j.at("quantity").get<double>();
    for (const auto& f : j.at("firms")) {
        r.prices.push_back(f.at("price").get<double>());
        r.markups.push_back(f.at("markup").get<double>());
        r.profits.push_back(f.at("profit").get<double>());
    }
    r.total_profit = j.at("total_profit").get<double>();
    r.consumer_surplus = j.at("consumer_surplus").get<double>();
    r.deadweight_loss = j.at("deadweight_loss").get<double>();
    r.social_welfare = j.at("social_welfare").get<double>();
    r.residual = j.at("residual").get<double>();
    r.iterations = j.at("iterations").get<int>();
    return r;
}

std::string report_to_csv(const EquilibriumReport& r, const MarketModel& m) {
    std::ostringstream out;
    out << "firm,price,markup,profit\n";
    for (int i = 0; i < m.net.size(); ++i)
        out << m.net.label(i) << "," << num12(r.prices[i]) << "," << num12(r.markups[i]) << ","
            << num12(r.profits[i]) << "\n";
    out << "TOTAL," << num12(r.P_star) << "," << num12(r.P_star - m.total_cost()) << ","
        << num12(r.total_profit) << "\n";
    return out.str();
}

std::string report_to_table(const EquilibriumReport& r, const MarketModel& m) {
    std::ostringstream out;
    out << "P* = " << num4(r.P_star) << "   D(P*) = " << num4(r.quantity) << "\n";
    out << "firm      price   markup   profit\n";
    for (int i = 0; i < m.net.size(); ++i) {
        out << m.net.label(i);
        for (std::size_t s = m.net.label(i).size(); s < 8; ++s) out << ' ';
        out << "  " << num4(r.prices[i]) << "  " << num4(r.markups[i]) << "  "
            << num4(r.profits[i]) << "\n";
    }
    out << "CS = " << num4(r.consumer_surplus) << "  DWL = " << num4(r.deadweight_loss)
        << "  total profit = " << num4(r.total_profit) << "  SW = " << num4(r.social_welfare)
        << "\n";
    return out.str();
}

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Desirable: return "desirable";
        case Verdict::Undesirable: return "undesirable";
        case Verdict::Neutral: return "neutral";
    }
    return "?";
}

json outcome_row(const ScenarioOutcome& o) {
    json dp = json::object();
    for (const auto& [k, v] : o.delta_profit) dp[k] = v;
    return json{{"name", o.name},
                {"P_star", o.report.P_star},
                {"total_profit", o.report.total_profit},
                {"consumer_surplus", o.report.consumer_surplus},
                {"social_welfare", o.report.social_welfare},
                {"tariff_total", o.tariff_total},
                {"tariff_revenue", o.tariff_revenue},
                {"total_welfare", o.total_welfare},
                {"delta_P", o.delta_P},
                {"delta_CS", o.delta_CS},
                {"delta_SW", o.delta_SW},
                {"delta_total_profit", o.delta_total_profit},
                {"delta_profit", dp},
                {"socially_desirable", verdict_name(o.socially_desirable)},
                {"privately_desirable", verdict_name(o.privately_desirable)},
                {"pareto_improvement", o.pareto_improvement}};
}

} // namespace

json comparison_to_json(const ComparisonReport& rep) {
    json outcomes = json::array();
    for (const auto& o : rep.outcomes) {
        json row = outcome_row(o);
        row["report"] = report_to_json(o.report, o.model);
        outcomes.push_back(std::move(row));
    }
    return json{{"base", report_to_json(rep.base_report, rep.base)}, {"scenarios", outcomes}};
}

std::string comparison_to_table(const ComparisonReport& rep) {
    std::ostringstream out;
    const auto& labels = rep.base.net.labels();
    out << "scenario        P*      sum_pi";
    for (const auto& l : labels) out << "  pi(" << l << ")";
    out << "      CS      SW\n";

    auto row = [&](const std::string& name, const EquilibriumReport& r,
                   const MarketModel& model, const ScenarioOutcome* o) {
        out << name;
        for (std::size_t s = name.size(); s < 12; ++s) out << ' ';
        out << "  " << num4(r.P_star) << "  " << num4(r.total_profit);
        for (const auto& l : labels) {
            int idx = model.net.index_of(l);
            double v;
            if (idx >= 0) {
                v = r.profits[idx];
            } else if (o) {
                // merged away: report the joint profit of the merged entity
                v = o->merged_joint_profit;
            } else {
                v = 0;
            }
            out << "  " << num4(v);
        }
        out << "  " << num4(r.consumer_surplus) << "  " << num4(r.social_welfare) << "\n";
    };

    row("base", rep.base_report, rep.base, nullptr);
    for (const auto& o : rep.outcomes) {
        row(o.name, o.report, o.model, &o);
        out << "    verdict: socially " << verdict_name(o.socially_desirable) << ", privately "
            << verdict_name(o.privately_desirable)
            << (o.pareto_improvement ? ", Pareto improvement" : "") << "\n";
    }
    return out.str();
}

std::string comparison_to_csv(const ComparisonReport& rep) {
    std::ostringstream out;
    const auto& labels = rep.base.net.labels();
    out << "scenario,P_star,total_profit";
    for (const auto& l : labels) out << ",profit_" << l;
    out << ",CS,SW,socially,privately,pareto\n";
    auto row = [&](const std::string& name, const EquilibriumReport& r, const MarketModel& model,
                   const ScenarioOutcome* o) {
        out << name << "," << num12(r.P_star) << "," << num12(r.total_profit);
        for (const auto& l : labels) {
            int idx = model.net.index_of(l);
            double v = idx >= 0 ? r.profits[idx] : (o ? o->merged_joint_profit : 0.0);
            out << "," << num12(v);
        }
        out << "," << num12(r.consumer_surplus) << "," << num12(r.social_welfare);
        if (o)
            out << "," << verdict_name(o->socially_desirable) << ","
                << verdict_name(o->privately_desirable) << ","
                << (o->pareto_improvement ? "yes" : "no");
        else
            out << ",,,";
        out << "\n";
    };
    row("base", rep.base_report, rep.base, nullptr);
    for (const auto& o : rep.outcomes) row(o.name, o.report, o.model, &o);
    return out.str();
}

std::string sweep_to_csv(const std::vector<DwlSweepRow>& rows) {
    std::ostringstream out;
    out << "n,kind,P_star,dwl\n";
    for (const auto& r : rows)
        out << r.n << "," << (r.kind == CanonicalKind::Empty ? "empty" : "chain") << ","
            << num12(r.P_star) << "," << num12(r.dwl) << "\n";
    return out.str();
}

} // namespace chainprice
