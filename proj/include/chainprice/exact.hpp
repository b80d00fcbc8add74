#ifndef CHAINPRICE_EXACT_HPP
#define CHAINPRICE_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "chainprice/equilibrium.hpp"

namespace chainprice {

using Rational = boost::multiprecision::cpp_rational;

/// Exact-arithmetic equilibrium for linear/power demand. Parameters are
/// taken from the model's doubles, which convert to rationals without loss
/// (doubles are dyadic); exact therefore means exact for the rational
/// inputs actually supplied.
struct ExactSolution {
    Rational P_star;
    std::vector<Rational> prices;
    std::vector<Rational> markups;

    double P_star_d() const;
    std::vector<double> prices_d() const;
    std::string to_string(const Rational& r) const;
};

ExactSolution solve_exact(const MarketModel& model);

} // namespace chainprice

#endif
