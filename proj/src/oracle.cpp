#include "chainprice/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace chainprice {

namespace {

// Root of the strictly increasing h on [lo, hi], bisection/secant hybrid.
template <class F>
double find_root(F&& h, double lo, double hi, double tol) {
    double a = lo, b = hi, fa = h(a), fb = h(b);
    if (!(fa < 0) || !(fb > 0)) throw RootNotBracketed("induced-price equation not bracketed");
    int it = 0;
    while (b - a > tol * std::max(1.0, std::fabs(b)) && it < 300) {
        double cand = (fb != fa) ? b - fb * (b - a) / (fb - fa) : 0.5 * (a + b);
        if (!(cand > a) || !(cand < b)) cand = 0.5 * (a + b);
        const double fc = h(cand);
        if (fc == 0) return cand;
        if (fc < 0) {
            a = cand;
            fa = fc;
        } else {
            b = cand;
            fb = fc;
        }
        if (++it % 3 == 0) {
            const double mid = 0.5 * (a + b);
            const double fm = h(mid);
            if (fm < 0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
                fb = fm;
            }
        }
    }
    return 0.5 * (a + b);
}

template <class F>
double golden_max(F&& f, double a, double b, double tol) {
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

DeviationCurve deviation_check(const MarketModel& model, const EquilibriumReport& report, int firm,
                               double w, int grid_size) {
    model.check();
    const int n = model.net.size();
    if (firm < 0 || firm >= n) throw InputError("deviation_check: invalid firm index");
    if (grid_size < 101) throw InputError("deviation_check: grid size must be >= 101");
    if (w <= 0) w = 0.5 * report.markups[firm];

    const PathCounts pc = path_counts(model.net);
    const int K = std::max(depth(model.net), 1);
    const double pbar = model.demand.saturation();
    const std::vector<int> influenced = model.net.influenced(firm);
    std::vector<bool> is_influenced(n, false);
    for (int j : influenced) is_influenced[j] = true;

    double fixed_base = model.c0;
    for (int j = 0; j < n; ++j)
        if (j != firm && !is_influenced[j]) fixed_base += report.prices[j];

    // Influenced firms move along their characterized reactions
    // f_j(P) = c_j + sum_k per_firm[j][k-1] g_k(P).
    auto responder_sum = [&](double P) {
        const GkTable t = gk_table(model.demand, P, K);
        double s = 0;
        for (int j : influenced) {
            double m = model.costs[j];
            for (int k = 0; k < K; ++k)
                m += static_cast<double>(pc.per_firm[j][k]) * t.values[k];
            s += m;
        }
        return s;
    };

    DeviationCurve curve;
    curve.firm = firm;
    curve.equilibrium_profit = report.profits[firm];

    const double p_star = report.prices[firm];
    const double lo_p = std::max(p_star - w, model.costs[firm] + 1e-9);
    const double hi_p = p_star + w;
    const double eps = 1e-12 * std::max(1.0, std::isfinite(pbar) ? pbar : p_star + 1);

    double best = -std::numeric_limits<double>::infinity();
    double best_p = p_star;
    for (int g = 0; g < grid_size; ++g) {
        const double pi = lo_p + (hi_p - lo_p) * g / (grid_size - 1);
        const double fixed = fixed_base + pi;
        auto h = [&](double P) { return P - fixed - responder_sum(P); };
        double P;
        try {
            double hi_P;
            if (std::isfinite(pbar)) {
                hi_P = pbar - eps;
            } else {
                double offset = std::max(1.0, fixed);
                hi_P = fixed + offset;
                int guard = 0;
                while (h(hi_P) <= 0 && ++guard < 60) {
                    offset *= 2;
                    hi_P = fixed + offset;
                }
            }
            P = find_root(h, eps, hi_P, 1e-12);
        } catch (const RootNotBracketed&) {
            ++curve.dropped_points;
            continue;
        }
        const double profit = (pi - model.costs[firm]) * demand(model.demand, P);
        curve.deviation_prices.push_back(pi);
        curve.induced_final_prices.push_back(P);
        curve.profits.push_back(profit);
        if (profit > best) {
            best = profit;
            best_p = pi;
        }
    }
    curve.best_profit = best;
    curve.best_price = best_p;
    curve.pass = best <= curve.equilibrium_profit * (1 + 1e-6) + 1e-12;
    return curve;
}

namespace {

// Topological order of a transitive tournament: out-degrees are all
// distinct, the leader has n-1.
std::vector<int> tournament_order(const InfluenceNetwork& net) {
    const int n = net.size();
    std::vector<int> order(n);
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        const int d = net.out_degree(i);
        const int pos = n - 1 - d;
        if (pos < 0 || pos >= n || seen[pos])
            throw InputError("chain oracle requires a transitive tournament");
        order[pos] = i;
        seen[pos] = true;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!net.edge(order[u], order[v]))
                throw InputError("chain oracle requires a transitive tournament");
    return order;
}

struct ChainGame {
    const MarketModel& model;
    std::vector<int> order;
    double tol;
    double base_width;
    std::vector<double> on_path; // filled on the equilibrium path

    // Final price when firms order[k..n-1] best-respond to the sum of the
    // already-chosen prices. record=true stores the on-path choices.
    double induced(int k, double sum, bool record) {
        const int n = model.net.size();
        if (k == n) return model.c0 + sum;
        const int firm = order[k];
        const double c = model.costs[firm];
        double width = base_width;
        double x = c;
        for (int attempt = 0; attempt < 8; ++attempt) {
            auto profit = [&](double p) {
                return (p - c) * demand(model.demand, induced(k + 1, sum + p, false));
            };
            x = golden_max(profit, c, c + width, tol);
            if (c + width - x > 64 * tol) break; // interior argmax
            width *= 2;                          // argmax hit the endpoint, widen
        }
        if (record) on_path[firm] = x;
        return induced(k + 1, sum + x, record);
    }
};

} // namespace

ChainSolution chain_backward_induction(const MarketModel& model, double price_tol) {
    model.check();
    const int n = model.net.size();
    if (n > 4) throw DepthTooLarge("chain backward induction is limited to n <= 4");
    ChainSolution sol;
    if (n == 0) {
        sol.final_price = model.c0;
        return sol;
    }
    ChainGame game{model, tournament_order(model.net), price_tol, 0, {}};
    const double pbar = model.demand.saturation();
    const double C = model.total_cost();
    game.base_width =
        std::isfinite(pbar) ? (pbar - C) : 3 * g_derivs(model.demand, C + 1, 0)[0] + 1;
    game.on_path.assign(n, 0);
    sol.final_price = game.induced(0, 0, true);
    sol.prices = game.on_path;
    return sol;
}

DiamondLinearOracle diamond_linear_oracle() {
    // FOC system for the two unobserved firms of the diamond network with
    // D(P) = 1 - P and zero costs:
    //   (1/3)(1 - 2 p1 - p2)  = 0
    //   (1/6)(2 - 2 p1 - 5 p2) = 0
    const double a11 = 2, a12 = 1, b1 = 1;
    const double a21 = 2, a22 = 5, b2 = 2;
    const double det = a11 * a22 - a12 * a21;
    const double p1 = (b1 * a22 - a12 * b2) / det;
    const double p2 = (a11 * b2 - b1 * a21) / det;

    DiamondLinearOracle o{};
    // p3*(p1) = (1 - p1 - p2*)/3 ; p4*(p1,p2) = (1 - p1)/3 + p2*/6 - p2/2
    o.br3_const = (1 - p2) / 3;
    o.br3_p1 = -1.0 / 3;
    o.br4_const = 1.0 / 3 + p2 / 6;
    o.br4_p1 = -1.0 / 3;
    o.br4_p2 = -0.5;
    const double p3 = o.br3_const + o.br3_p1 * p1;
    const double p4 = o.br4_const + o.br4_p1 * p1 + o.br4_p2 * p2;
    o.prices = {p1, p2, p3, p4};
    o.final_price = p1 + p2 + p3 + p4;
    return o;
}

} // namespace chainprice
