#ifndef CHAINPRICE_EQUILIBRIUM_HPP
#define CHAINPRICE_EQUILIBRIUM_HPP

#include <vector>

#include "chainprice/demand.hpp"
#include "chainprice/network.hpp"

namespace chainprice {

/// A full game instance: influence network, per-monopolist marginal costs,
/// the aggregate price-taker cost c0, and the demand function.
struct MarketModel {
    InfluenceNetwork net;
    std::vector<double> costs; // one per monopolist, c_i >= 0
    double c0 = 0;
    DemandSpec demand;

    double total_cost() const; // C = c0 + sum c_i
    void check() const;        // throws on malformed costs or C >= P-bar
};

struct EquilibriumReport {
    double P_star = 0;
    std::vector<double> prices;   // p_i*
    std::vector<double> markups;  // p_i* - c_i = influentiality I_i
    std::vector<double> profits;  // (p_i* - c_i) D(P*)
    double quantity = 0;          // D(P*)
    double total_profit = 0;
    double consumer_surplus = 0;
    double deadweight_loss = 0;
    double social_welfare = 0; // CS + total profit
    double residual = 0;       // |f(P*)| of the equilibrium equation
    int iterations = 0;
};

/// Finds the unique root of f(P) = P - C - sum_k totals[k-1] g_k(P) on
/// (C, P-bar) by safeguarded bisection/secant with a Newton polish, then
/// reads off per-firm prices p_i* = c_i + sum_k per_firm[i][k-1] g_k(P*).
/// n = 0 degenerates to P* = C with zero profits.
EquilibriumReport solve(const MarketModel& model, double tol = 1e-12);

/// Closed form for linear/power demand: P* = (C + Pbar B) / (1 + B) with
/// B = sum_k beta^k totals[k-1]. Agrees with solve() to 1e-10.
EquilibriumReport solve_closed_form(const MarketModel& model);

/// Per-firm influentiality I_i (equals the equilibrium markup).
std::vector<double> influentiality(const EquilibriumReport& report);

/// Bonacich centrality B_i = sum_k beta^k e_i' A^{k-1} 1. Acyclicity makes
/// the sum finite, so any beta > 0 is admissible.
std::vector<double> bonacich(const InfluenceNetwork& net, double beta);

/// Out-degree centrality e_i' A 1.
std::vector<int> degree(const InfluenceNetwork& net);

struct LogitBounds {
    double price_lower_bound = 0;           // C + n/alpha
    std::vector<double> firm_lower_bounds;  // c_i + 1/alpha
    double gap = 0;                         // P* - C - n/alpha
    std::vector<double> firm_gaps;          // p_i* - c_i - 1/alpha
    bool strict_bounds_hold = false;
};

LogitBounds logit_bounds(const MarketModel& model, const EquilibriumReport& report);

struct Welfare {
    double consumer_surplus = 0;
    double deadweight_loss = 0;
    double social_welfare = 0;
    double total_profit = 0;
};

Welfare welfare(const EquilibriumReport& report, const MarketModel& model);

} // namespace chainprice

#endif
