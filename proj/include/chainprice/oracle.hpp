#ifndef CHAINPRICE_ORACLE_HPP
#define CHAINPRICE_ORACLE_HPP

#include <array>
#include <vector>

#include "chainprice/equilibrium.hpp"

namespace chainprice {

/// Profit of one firm along a grid of unilateral price deviations, holding
/// non-influenced firms at their equilibrium prices and letting influenced
/// firms respond along their characterized reactions.
struct DeviationCurve {
    int firm = -1;
    std::vector<double> deviation_prices;
    std::vector<double> induced_final_prices;
    std::vector<double> profits;
    int dropped_points = 0; // grid points where the induced price left the bracket
    double best_profit = 0;
    double best_price = 0;
    double equilibrium_profit = 0;
    bool pass = false; // best grid profit within tolerance of the equilibrium profit
};

/// Grid half-width w defaults (when w <= 0) to 0.5 * equilibrium markup.
DeviationCurve deviation_check(const MarketModel& model, const EquilibriumReport& report, int firm,
                               double w = 0, int grid_size = 201);

/// Characterization-free SPNE solver for transitive tournaments with
/// n <= 4: nested golden-section best responses, innermost firm first.
struct ChainSolution {
    std::vector<double> prices;
    double final_price = 0;
};

ChainSolution chain_backward_induction(const MarketModel& model, double price_tol = 1e-11);

/// Reproduces the affine fixed point of the diamond network (edges 1->3,
/// 1->4, 2->4) with D(P) = 1 - P and zero costs, independently of the main
/// solver. Prices are (3/8, 1/4, 1/8, 1/8), P* = 7/8.
struct DiamondLinearOracle {
    std::array<double, 4> prices;
    double final_price;
    // best responses: p3(p1) = br3_const + br3_p1 * p1,
    //                 p4(p1,p2) = br4_const + br4_p1 * p1 + br4_p2 * p2
    double br3_const, br3_p1;
    double br4_const, br4_p1, br4_p2;
};

DiamondLinearOracle diamond_linear_oracle();

} // namespace chainprice

#endif
