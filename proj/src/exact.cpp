#include "chainprice/exact.hpp"

namespace chainprice {

double ExactSolution::P_star_d() const { return static_cast<double>(P_star); }

std::vector<double> ExactSolution::prices_d() const {
    std::vector<double> out;
    out.reserve(prices.size());
    for (const auto& p : prices) out.push_back(static_cast<double>(p));
    return out;
}

std::string ExactSolution::to_string(const Rational& r) const { return r.str(); }

ExactSolution solve_exact(const MarketModel& model) {
    model.check();
    const auto fam = model.demand.family();
    if (fam != DemandFamily::Linear && fam != DemandFamily::Power)
        throw WrongFamily("exact path requires linear or power demand");

    const Rational beta = (fam == DemandFamily::Linear) ? Rational(1) : Rational(model.demand.beta);
    const Rational pbar = Rational(model.demand.a) / Rational(model.demand.b);
    Rational C = Rational(model.c0);
    for (double ci : model.costs) C += Rational(ci);

    const int n = model.net.size();
    const PathCounts pc = path_counts(model.net);

    Rational B = 0, w = beta;
    for (int k = 0; k < n; ++k) {
        B += w * pc.totals[k];
        w *= beta;
    }

    ExactSolution s;
    s.P_star = (C + pbar * B) / (1 + B);
    s.prices.resize(n);
    s.markups.resize(n);
    for (int i = 0; i < n; ++i) {
        Rational Bi = 0, wi = beta;
        for (int k = 0; k < n; ++k) {
            Bi += wi * pc.per_firm[i][k];
            wi *= beta;
        }
        s.markups[i] = Bi / (1 + B) * (pbar - C);
        s.prices[i] = Rational(model.costs[i]) + s.markups[i];
    }
    return s;
}

} // namespace chainprice
