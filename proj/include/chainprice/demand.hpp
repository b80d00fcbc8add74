#ifndef CHAINPRICE_DEMAND_HPP
#define CHAINPRICE_DEMAND_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "chainprice/errors.hpp"

namespace chainprice {

enum class DemandFamily { Linear, Power, Logit, Exponential, Custom };

/// A demand family with the parameters fixed. The interesting surface is the
/// g-kernel g(P) = -D(P)/D'(P) and its derivatives; the four named families
/// have closed forms, Custom falls back to finite differences of D.
class DemandSpec {
  public:
    /// D(P) = a - bP, saturation a/b.
    static DemandSpec linear(double a, double b);
    /// D(P) = d (a - bP)^(1/beta), saturation a/b.
    static DemandSpec power(double d, double a, double b, double beta);
    /// D(P) = d e^(-alpha P) / (1 + e^(-alpha P)), no saturation point.
    static DemandSpec logit(double d, double alpha);
    /// D(P) = a - b e^(alpha P) with a > b > 0; saturation (1/alpha) ln(a/b).
    static DemandSpec exponential(double a, double b, double alpha);
    /// Arbitrary demand evaluator; g-derivatives come from central
    /// differences of D with the given step (scaled by max(1,P)), so results
    /// are approximate and limited to max_order.
    static DemandSpec custom(std::function<double(double)> evaluator, int max_order,
                             double step = 1e-4,
                             double saturation = std::numeric_limits<double>::infinity());

    DemandFamily family() const { return family_; }
    /// Saturation point P-bar: the lowest price with zero demand (may be +inf).
    double saturation() const { return pbar_; }
    double scale() const { return d_; }

    double a = 0, b = 0, beta = 1, alpha = 0;
    int custom_max_order = 0;
    double custom_step = 1e-4;
    std::function<double(double)> evaluator;

  private:
    DemandFamily family_ = DemandFamily::Linear;
    double d_ = 1;
    double pbar_ = 0;
};

/// [g(P), g'(P), ..., g^(m)(P)]. Requires 0 < P < P-bar.
std::vector<double> g_derivs(const DemandSpec& spec, double P, int m);

/// Values (and optionally first derivatives) of the recursive weights
/// g_1 = g, g_{k+1} = -g_k' g at a point, for k = 1..K.
struct GkTable {
    double P = 0;
    std::vector<double> values; // values[k-1] = g_k(P)
    std::vector<double> derivs; // derivs[k-1] = g_k'(P); empty without with_derivs
};

GkTable gk_table(const DemandSpec& spec, double P, int K, bool with_derivs = false);

/// D(P); zero at and above the saturation point.
double demand(const DemandSpec& spec, double P);
double demand_deriv(const DemandSpec& spec, double P);

/// Consumer surplus at price P: integral of D from P to P-bar.
double cs(const DemandSpec& spec, double P);

/// Deadweight loss of pricing at P relative to pricing at marginal cost C:
/// CS(C) - CS(P) - (P-C) D(P).
double dwl(const DemandSpec& spec, double P, double C);

std::string family_name(DemandFamily f);

} // namespace chainprice

#endif
