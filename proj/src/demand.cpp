#include "chainprice/demand.hpp"

#include <cmath>

namespace chainprice {

namespace {

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_positive(double x, const char* name) {
    if (!(x > 0)) throw InputError(std::string("parameter must be positive: ") + name);
}

} // namespace

DemandSpec DemandSpec::linear(double a, double b) {
    check_positive(a, "a");
    check_positive(b, "b");
    DemandSpec s;
    s.family_ = DemandFamily::Linear;
    s.a = a;
    s.b = b;
    s.beta = 1;
    s.d_ = 1;
    s.pbar_ = a / b;
    return s;
}

DemandSpec DemandSpec::power(double d, double a, double b, double beta) {
    check_positive(d, "d");
    check_positive(a, "a");
    check_positive(b, "b");
    check_positive(beta, "beta");
    DemandSpec s;
    s.family_ = DemandFamily::Power;
    s.a = a;
    s.b = b;
    s.beta = beta;
    s.d_ = d;
    s.pbar_ = a / b;
    return s;
}

DemandSpec DemandSpec::logit(double d, double alpha) {
    check_positive(d, "d");
    check_positive(alpha, "alpha");
    DemandSpec s;
    s.family_ = DemandFamily::Logit;
    s.alpha = alpha;
    s.d_ = d;
    s.pbar_ = std::numeric_limits<double>::infinity();
    return s;
}

DemandSpec DemandSpec::exponential(double a, double b, double alpha) {
    check_positive(b, "b");
    check_positive(alpha, "alpha");
    if (!(a > b)) throw InputError("exponential demand requires a > b > 0");
    DemandSpec s;
    s.family_ = DemandFamily::Exponential;
    s.a = a;
    s.b = b;
    s.alpha = alpha;
    s.d_ = 1;
    s.pbar_ = std::log(a / b) / alpha;
    return s;
}

DemandSpec DemandSpec::custom(std::function<double(double)> evaluator, int max_order, double step,
                              double saturation) {
    if (!evaluator) throw InputError("custom demand needs an evaluator");
    if (max_order < 0) throw InputError("custom demand max_order must be >= 0");
    check_positive(step, "step");
    DemandSpec s;
    s.family_ = DemandFamily::Custom;
    s.evaluator = std::move(evaluator);
    s.custom_max_order = max_order;
    s.custom_step = step;
    s.d_ = 1;
    s.pbar_ = saturation;
    return s;
}

std::string family_name(DemandFamily f) {
    switch (f) {
        case DemandFamily::Linear: return "linear";
        case DemandFamily::Power: return "power";
        case DemandFamily::Logit: return "logit";
        case DemandFamily::Exponential: return "exponential";
        case DemandFamily::Custom: return "custom";
    }
    return "?";
}

double demand(const DemandSpec& spec, double P) {
    if (P < 0) throw OutOfDomain("price below zero");
    if (P >= spec.saturation()) return 0;
    switch (spec.family()) {
        case DemandFamily::Linear: return spec.a - spec.b * P;
        case DemandFamily::Power:
            return spec.scale() * std::pow(spec.a - spec.b * P, 1.0 / spec.beta);
        case DemandFamily::Logit: {
            const double e = std::exp(-spec.alpha * P);
            return spec.scale() * e / (1 + e);
        }
        case DemandFamily::Exponential: return spec.a - spec.b * std::exp(spec.alpha * P);
        case DemandFamily::Custom: return spec.evaluator(P);
    }
    return 0;
}

double demand_deriv(const DemandSpec& spec, double P) {
    if (P < 0 || P >= spec.saturation()) throw OutOfDomain("price outside (0, P-bar)");
    switch (spec.family()) {
        case DemandFamily::Linear: return -spec.b;
        case DemandFamily::Power:
            return -spec.scale() * spec.b / spec.beta *
                   std::pow(spec.a - spec.b * P, 1.0 / spec.beta - 1);
        case DemandFamily::Logit: {
            const double e = std::exp(-spec.alpha * P);
            const double q = 1 + e;
            return -spec.scale() * spec.alpha * e / (q * q);
        }
        case DemandFamily::Exponential: return -spec.b * spec.alpha * std::exp(spec.alpha * P);
        case DemandFamily::Custom: {
            const double h = spec.custom_step * std::max(1.0, P);
            return (spec.evaluator(P + h) - spec.evaluator(P - h)) / (2 * h);
        }
    }
    return 0;
}

namespace {

// Central-difference estimate of D^(k) at P, then g-derivatives from the
// identity g D' = -D differentiated l times:
//   g^(l) = (-D^(l) - sum_{j<l} C(l,j) g^(j) D^(l-j+1)) / D'.
std::vector<double> custom_g_derivs(const DemandSpec& spec, double P, int m) {
    if (m > spec.custom_max_order)
        throw OrderUnsupported("custom demand supports derivatives up to order " +
                               std::to_string(spec.custom_max_order));
    std::vector<double> dd(m + 2); // dd[k] = D^(k)(P)
    for (int k = 0; k <= m + 1; ++k) {
        // widen the stencil with the order, otherwise rounding noise
        // (~eps/h^k) swamps the estimate from k = 3 on
        const double h =
            std::max(1.0, P) * (k <= 1 ? spec.custom_step
                                        : std::pow(spec.custom_step, 3.0 / (k + 2)));
        double s = 0;
        for (int j = 0; j <= k; ++j) {
            const double x = P + (k / 2.0 - j) * h;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            s += sign * binom(k, j) * spec.evaluator(x);
        }
        dd[k] = s / std::pow(h, k);
    }
    if (!(dd[1] < 0)) throw NonMonotoneKernel("custom demand is not decreasing at P");
    std::vector<double> g(m + 1);
    for (int l = 0; l <= m; ++l) {
        double s = -dd[l];
        for (int j = 0; j < l; ++j) s -= binom(l, j) * g[j] * dd[l - j + 1];
        g[l] = s / dd[1];
    }
    return g;
}

} // namespace

std::vector<double> g_derivs(const DemandSpec& spec, double P, int m) {
    if (m < 0) throw InputError("negative derivative order");
    if (!(P > 0) || !(P < spec.saturation())) throw OutOfDomain("price outside (0, P-bar)");
    std::vector<double> out(m + 1, 0.0);
    switch (spec.family()) {
        case DemandFamily::Linear:
            out[0] = spec.saturation() - P;
            if (m >= 1) out[1] = -1;
            return out;
        case DemandFamily::Power:
            out[0] = spec.beta * (spec.saturation() - P);
            if (m >= 1) out[1] = -spec.beta;
            return out;
        case DemandFamily::Logit: {
            // g = (1/alpha)(1 + e^{-alpha P}); g^(k) = (-1)^k alpha^{k-1} e^{-alpha P}.
            const double e = std::exp(-spec.alpha * P);
            out[0] = (1 + e) / spec.alpha;
            double coef = e; // alpha^{k-1} e^{-alpha P} at k=1
            for (int k = 1; k <= m; ++k) {
                out[k] = (k % 2 == 0 ? coef : -coef);
                coef *= spec.alpha;
            }
            return out;
        }
        case DemandFamily::Exponential: {
            // g = (1/alpha)((a/b) e^{-alpha P} - 1); the constant inside the
            // bracket is a/b, not the saturation point ln(a/b)/alpha.
            const double r = spec.a / spec.b;
            const double e = std::exp(-spec.alpha * P);
            out[0] = (r * e - 1) / spec.alpha;
            double coef = r * e;
            for (int k = 1; k <= m; ++k) {
                out[k] = (k % 2 == 0 ? coef : -coef);
                coef *= spec.alpha;
            }
            return out;
        }
        case DemandFamily::Custom: return custom_g_derivs(spec, P, m);
    }
    return out;
}

GkTable gk_table(const DemandSpec& spec, double P, int K, bool with_derivs) {
    if (K < 1) throw InputError("gk_table requires K >= 1");
    const int top = K - 1 + (with_derivs ? 1 : 0); // highest g-derivative order needed
    const std::vector<double> g = g_derivs(spec, P, top);

    GkTable t;
    t.P = P;
    t.values.reserve(K);
    if (with_derivs) t.derivs.reserve(K);

    // cur holds derivatives of g_k up to the order still needed; each level
    // consumes one order: g_{k+1}^(l) = -sum_j C(l,j) g_k^(l-j+1) g^(j).
    std::vector<double> cur = g;
    for (int k = 1; k <= K; ++k) {
        t.values.push_back(cur[0]);
        if (with_derivs) t.derivs.push_back(cur.size() > 1 ? cur[1] : 0.0);
        if (k == K) break;
        std::vector<double> next(cur.size() - 1);
        for (std::size_t l = 0; l < next.size(); ++l) {
            double s = 0;
            for (std::size_t j = 0; j <= l; ++j) s += binom(static_cast<int>(l), static_cast<int>(j)) * cur[l - j + 1] * g[j];
            next[l] = -s;
        }
        cur.swap(next);
    }
    return t;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double cs(const DemandSpec& spec, double P) {
    if (P < 0) throw OutOfDomain("price below zero");
    if (P >= spec.saturation()) return 0;
    switch (spec.family()) {
        case DemandFamily::Linear: {
            const double s = spec.saturation() - P;
            return 0.5 * spec.b * s * s;
        }
        case DemandFamily::Power: {
            const double e = 1.0 / spec.beta + 1;
            return spec.scale() * std::pow(spec.a - spec.b * P, e) / (spec.b * e);
        }
        case DemandFamily::Logit:
            return spec.scale() / spec.alpha * std::log1p(std::exp(-spec.alpha * P));
        case DemandFamily::Exponential:
            return spec.a * (spec.saturation() - P) -
                   (spec.a - spec.b * std::exp(spec.alpha * P)) / spec.alpha;
        case DemandFamily::Custom: {
            double upper = spec.saturation();
            if (!std::isfinite(upper)) {
                // push the tail out until demand is negligible
                const double ref = std::fabs(spec.evaluator(P)) + 1;
                upper = std::max(P + 1, 1.0);
                while (std::fabs(spec.evaluator(upper)) > 1e-14 * ref && upper < 1e8) upper *= 2;
            }
            const double tol = 1e-10 * (std::fabs(spec.evaluator(P)) * (upper - P) + 1);
            return integrate(spec.evaluator, P, upper, tol);
        }
    }
    return 0;
}

double dwl(const DemandSpec& spec, double P, double C) {
    if (P < C) throw OutOfDomain("dwl requires P >= C");
    return cs(spec, C) - cs(spec, P) - (P - C) * demand(spec, P);
}

} // namespace chainprice
