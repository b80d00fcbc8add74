#ifndef CHAINPRICE_SCENARIO_HPP
#define CHAINPRICE_SCENARIO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chainprice/equilibrium.hpp"

namespace chainprice {

/// A merger (node contraction with optional extra influence edges, or a
/// fully explicit post-merger adjacency) applied to a base model.
struct MergerDelta {
    std::string firm_a, firm_b;                              // labels in the base model
    std::vector<std::pair<std::string, std::string>> extra_edges; // post-merger labels
    std::optional<BoolMatrix> explicit_network;              // overrides the closure rule
    std::vector<std::string> explicit_labels;
    std::optional<double> merged_cost; // default: sum of the two costs
};

/// Additive per-firm cost changes (tariffs) plus a price-taker change t0.
struct TariffDelta {
    std::map<std::string, double> tariffs; // label -> t_i
    double t0 = 0;
};

struct Scenario {
    std::string name;
    std::optional<MergerDelta> merger;
    std::optional<TariffDelta> tariff;
};

/// Applies a scenario's delta to the base model.
MarketModel apply_scenario(const MarketModel& base, const Scenario& scenario);

enum class Verdict { Desirable, Undesirable, Neutral };

struct ScenarioOutcome {
    std::string name;
    MarketModel model;
    EquilibriumReport report;
    double tariff_total = 0;   // T (merger scenarios: 0)
    double tariff_revenue = 0; // D(P*) * T
    double total_welfare = 0;  // CS + sum pi + D(P*) T

    double delta_P = 0;
    double delta_CS = 0;
    double delta_SW = 0;
    double delta_total_profit = 0;
    // Per base-model firm: post-scenario profit minus pre profit. For a
    // merger, both constituents map to the merged entity and the delta
    // compares the joint profit against the sum of their pre-merger profits.
    std::map<std::string, double> delta_profit;
    double merged_joint_profit = 0; // merger scenarios only
    double merged_pre_profit_sum = 0;

    Verdict socially_desirable = Verdict::Neutral;   // SW up
    Verdict privately_desirable = Verdict::Neutral;  // merging firms' joint profit up
    bool pareto_improvement = false;                 // all firms' profits up and CS up
};

struct ComparisonReport {
    MarketModel base;
    EquilibriumReport base_report;
    std::vector<ScenarioOutcome> outcomes;
};

ComparisonReport run_comparison(const MarketModel& base, const std::vector<Scenario>& scenarios,
                                double tol = 1e-12);

struct TariffSensitivity {
    double dP_dC = 0;                 // 1 / (1 - sum_k totals[k-1] g_k'(P*))
    std::vector<double> dprofit_dC;   // central differences in C
    double dTW_dP = 0;                // D'(P*) (P* - C_hat)
};

/// tariff_total is the part T of the current total cost that is tariffs,
/// so C_hat = C - T.
TariffSensitivity tariff_sensitivity(const MarketModel& model, double tariff_total = 0,
                                     double tol = 1e-12);

struct DwlSweepRow {
    int n = 0;
    CanonicalKind kind = CanonicalKind::Empty;
    double P_star = 0;
    double dwl = 0;
};

/// Equilibrium price and deadweight loss for empty(n) and chain(n) networks
/// over a range of sizes (the data behind the best-vs-worst-case plots).
std::vector<DwlSweepRow> dwl_sweep(const DemandSpec& demand, int n_min, int n_max,
                                   const std::vector<CanonicalKind>& kinds, double C = 0);

} // namespace chainprice

#endif
