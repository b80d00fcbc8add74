#include "chainprice/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace chainprice {

double MarketModel::total_cost() const {
    double c = c0;
    for (double ci : costs) c += ci;
    return c;
}

void MarketModel::check() const {
    if (static_cast<int>(costs.size()) != net.size())
        throw InputError("cost vector length does not match firm count");
    for (double ci : costs)
        if (!(ci >= 0)) throw InputError("negative marginal cost");
    if (!(c0 >= 0)) throw InputError("negative price-taker cost");
    if (total_cost() >= demand.saturation())
        throw NoGainsFromTrade("total cost reaches the demand saturation point");
}

namespace {

struct Kernel {
    const MarketModel& model;
    const PathCounts& pc;
    int K;
    double C;

    double f(double P) const {
        const GkTable t = gk_table(model.demand, P, K);
        double s = 0;
        for (int k = 0; k < K; ++k) s += static_cast<double>(pc.totals[k]) * t.values[k];
        return P - C - s;
    }
    double f_deriv(double P) const {
        const GkTable t = gk_table(model.demand, P, K, true);
        double s = 0;
        for (int k = 0; k < K; ++k) s += static_cast<double>(pc.totals[k]) * t.derivs[k];
        return 1 - s;
    }
};

void fill_report(EquilibriumReport& r, const MarketModel& model, const PathCounts& pc, int K) {
    const int n = model.net.size();
    r.prices.assign(n, 0);
    r.markups.assign(n, 0);
    r.profits.assign(n, 0);
    r.quantity = demand(model.demand, r.P_star);
    GkTable t;
    if (n > 0) t = gk_table(model.demand, r.P_star, K);
    r.total_profit = 0;
    for (int i = 0; i < n; ++i) {
        double m = 0;
        for (int k = 0; k < K; ++k)
            m += static_cast<double>(pc.per_firm[i][k]) * t.values[k];
        r.markups[i] = m;
        r.prices[i] = model.costs[i] + m;
        r.profits[i] = m * r.quantity;
        r.total_profit += r.profits[i];
    }
    r.consumer_surplus = cs(model.demand, r.P_star);
    r.deadweight_loss = dwl(model.demand, r.P_star, model.total_cost());
    r.social_welfare = r.consumer_surplus + r.total_profit;
}

} // namespace

EquilibriumReport solve(const MarketModel& model, double tol) {
    model.check();
    const int n = model.net.size();
    const double C = model.total_cost();
    const double pbar = model.demand.saturation();
    const PathCounts pc = path_counts(model.net);
    const int K = std::max(depth(model.net), 1);

    EquilibriumReport r;
    if (n == 0) {
        r.P_star = C;
        r.quantity = demand(model.demand, C);
        r.consumer_surplus = cs(model.demand, C);
        r.social_welfare = r.consumer_surplus;
        return r;
    }

    const Kernel kern{model, pc, K, C};
    const double eps = 1e-12 * std::max(1.0, std::isfinite(pbar) ? pbar : C + 1);
    double lo = C + eps;
    double hi;
    if (std::isfinite(pbar)) {
        hi = pbar - eps;
    } else {
        const double g0 = g_derivs(model.demand, C + 1, 0)[0];
        double offset = std::max(n * g0, 1.0);
        hi = C + offset;
        while (kern.f(hi) <= 0) {
            offset *= 2;
            if (offset > 1e6) throw NoConvergence("upper bracket expansion exceeded 1e6");
            hi = C + offset;
        }
    }
    double flo = kern.f(lo);
    double fhi = kern.f(hi);
    if (!(flo < 0) || !(fhi > 0))
        throw NonMonotoneKernel("equilibrium equation is not bracketed on (C, P-bar)");

    // Monotonicity probe: Assumption 3 makes f strictly increasing; a Custom
    // demand violating it is caught here.
    {
        double prev = flo;
        for (int i = 1; i <= 20; ++i) {
            const double P = lo + (hi - lo) * i / 21.0;
            const double fP = kern.f(P);
            if (fP < prev - 1e-9 * (std::fabs(prev) + 1))
                throw NonMonotoneKernel("equilibrium equation decreases inside the bracket");
            prev = fP;
        }
    }

    // Safeguarded secant/bisection on the bracket.
    double a = lo, b = hi, fa = flo, fb = fhi;
    int iters = 0;
    double x = 0.5 * (a + b);
    while (b - a > tol * std::max(1.0, std::fabs(b)) && iters < 200) {
        double cand = (std::fabs(fb - fa) > 0) ? b - fb * (b - a) / (fb - fa) : 0.5 * (a + b);
        if (!(cand > a) || !(cand < b)) cand = 0.5 * (a + b);
        const double fc = kern.f(cand);
        ++iters;
        if (fc == 0) {
            a = b = cand;
            fa = fb = fc;
            break;
        }
        if (fc < 0) {
            a = cand;
            fa = fc;
        } else {
            b = cand;
            fb = fc;
        }
        // fall back to bisection when the bracket stops shrinking fast
        if (iters % 3 == 0) {
            const double mid = 0.5 * (a + b);
            const double fm = kern.f(mid);
            ++iters;
            if (fm < 0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
                fb = fm;
            }
        }
        x = 0.5 * (a + b);
    }
    if (iters >= 200) throw NoConvergence("root finder exceeded the iteration budget");

    // Newton polish tightens the residual, not just the price interval.
    for (int i = 0; i < 6; ++i) {
        const double fx = kern.f(x);
        if (std::fabs(fx) <= 0.1 * tol * std::max(1.0, std::fabs(x))) break;
        const double dfx = kern.f_deriv(x);
        if (!(dfx > 0)) break;
        double step = fx / dfx;
        double nx = x - step;
        if (!(nx > lo) || !(nx < hi)) break;
        x = nx;
        ++iters;
    }

    r.P_star = x;
    r.residual = std::fabs(kern.f(x));
    r.iterations = iters;
    fill_report(r, model, pc, K);
    return r;
}

EquilibriumReport solve_closed_form(const MarketModel& model) {
    model.check();
    const auto fam = model.demand.family();
    if (fam != DemandFamily::Linear && fam != DemandFamily::Power)
        throw WrongFamily("closed form requires linear or power demand");
    const double beta = (fam == DemandFamily::Linear) ? 1.0 : model.demand.beta;
    const double pbar = model.demand.saturation();
    const double C = model.total_cost();
    const int n = model.net.size();
    const PathCounts pc = path_counts(model.net);

    EquilibriumReport r;
    double B = 0;
    {
        double w = beta;
        for (int k = 0; k < n; ++k) {
            B += w * static_cast<double>(pc.totals[k]);
            w *= beta;
        }
    }
    r.P_star = (C + pbar * B) / (1 + B);
    r.quantity = demand(model.demand, r.P_star);
    r.prices.assign(n, 0);
    r.markups.assign(n, 0);
    r.profits.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        double Bi = 0, w = beta;
        for (int k = 0; k < n; ++k) {
            Bi += w * static_cast<double>(pc.per_firm[i][k]);
            w *= beta;
        }
        r.markups[i] = Bi / (1 + B) * (pbar - C);
        r.prices[i] = model.costs[i] + r.markups[i];
        r.profits[i] = r.markups[i] * r.quantity;
        r.total_profit += r.profits[i];
    }
    r.consumer_surplus = cs(model.demand, r.P_star);
    r.deadweight_loss = dwl(model.demand, r.P_star, C);
    r.social_welfare = r.consumer_surplus + r.total_profit;
    return r;
}

std::vector<double> influentiality(const EquilibriumReport& report) { return report.markups; }

std::vector<double> bonacich(const InfluenceNetwork& net, double beta) {
    if (!(beta > 0)) throw InputError("bonacich requires beta > 0");
    const int n = net.size();
    const PathCounts pc = path_counts(net);
    std::vector<double> out(n, 0);
    for (int i = 0; i < n; ++i) {
        double w = beta;
        for (int k = 0; k < n; ++k) {
            out[i] += w * static_cast<double>(pc.per_firm[i][k]);
            w *= beta;
        }
    }
    return out;
}

std::vector<int> degree(const InfluenceNetwork& net) {
    std::vector<int> out(net.size(), 0);
    for (int i = 0; i < net.size(); ++i) out[i] = net.out_degree(i);
    return out;
}

LogitBounds logit_bounds(const MarketModel& model, const EquilibriumReport& report) {
    if (model.demand.family() != DemandFamily::Logit)
        throw WrongFamily("logit bounds require logit demand");
    const int n = model.net.size();
    const double alpha = model.demand.alpha;
    LogitBounds lb;
    lb.price_lower_bound = model.total_cost() + n / alpha;
    lb.gap = report.P_star - lb.price_lower_bound;
    lb.firm_lower_bounds.resize(n);
    lb.firm_gaps.resize(n);
    bool ok = report.P_star > lb.price_lower_bound;
    for (int i = 0; i < n; ++i) {
        lb.firm_lower_bounds[i] = model.costs[i] + 1 / alpha;
        lb.firm_gaps[i] = report.prices[i] - lb.firm_lower_bounds[i];
        ok = ok && report.prices[i] > lb.firm_lower_bounds[i];
    }
    lb.strict_bounds_hold = ok;
    return lb;
}

Welfare welfare(const EquilibriumReport& report, const MarketModel& model) {
    Welfare w;
    w.consumer_surplus = cs(model.demand, report.P_star);
    w.total_profit = report.total_profit;
    w.social_welfare = w.consumer_surplus + w.total_profit;
    w.deadweight_loss = dwl(model.demand, report.P_star, model.total_cost());
    return w;
}

} // namespace chainprice
