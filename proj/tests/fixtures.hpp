#ifndef CHAINPRICE_TEST_FIXTURES_HPP
#define CHAINPRICE_TEST_FIXTURES_HPP

#include "chainprice/equilibrium.hpp"

namespace chainprice::fixtures {

// Six-firm network L,T,F,C,D,R: L->T, L->F, L->C, D->F, R->F, R->D.
inline InfluenceNetwork six_firm() {
    BoolMatrix a(6, std::vector<bool>(6, false));
    a[0][1] = a[0][2] = a[0][3] = true;
    a[4][2] = true;
    a[5][2] = a[5][4] = true;
    return validate(a, {"L", "T", "F", "C", "D", "R"});
}

// Diamond: 1->3, 1->4, 2->4.
inline InfluenceNetwork diamond() {
    BoolMatrix a(4, std::vector<bool>(4, false));
    a[0][2] = a[0][3] = true;
    a[1][3] = true;
    return validate(a);
}

// Five-firm merger example: 1->2, 1->4, 3->4.
inline InfluenceNetwork five_firm() {
    BoolMatrix a(5, std::vector<bool>(5, false));
    a[0][1] = a[0][3] = a[2][3] = true;
    return validate(a);
}

inline MarketModel model(InfluenceNetwork net, DemandSpec demand, double c0 = 0) {
    const int n = net.size();
    return MarketModel{std::move(net), std::vector<double>(n, 0.0), c0, std::move(demand)};
}

// All transitive DAGs on n labelled nodes (n small), by exhaustive filter.
inline std::vector<InfluenceNetwork> all_valid_networks(int n) {
    std::vector<InfluenceNetwork> out;
    const int bits = n * (n - 1);
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        BoolMatrix a(n, std::vector<bool>(n, false));
        int b = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                a[i][j] = (mask >> b) & 1;
                ++b;
            }
        try {
            out.push_back(validate(a));
        } catch (const ValidationError&) {
        }
    }
    return out;
}

} // namespace chainprice::fixtures

#endif
