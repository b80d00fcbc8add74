#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "chainprice/exact.hpp"
#include "chainprice/io.hpp"
#include "chainprice/oracle.hpp"
#include "chainprice/scenario.hpp"

using namespace chainprice;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitBadInput = 3;

double default_tol() {
    if (const char* env = std::getenv("CHAINPRICE_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 1e-12;
}

int run_verify(const MarketModel& model, double tol, const std::string& csv_path) {
    const EquilibriumReport rep = solve(model, tol);
    bool all_pass = true;
    std::string csv = "firm,deviation_price,induced_P,profit\n";
    std::cout << "firm      best-dev-profit  eq-profit   dropped  result\n";
    for (int i = 0; i < model.net.size(); ++i) {
        const DeviationCurve c = deviation_check(model, rep, i);
        all_pass = all_pass && c.pass;
        std::cout << model.net.label(i);
        for (std::size_t s = model.net.label(i).size(); s < 8; ++s) std::cout << ' ';
        std::cout << "  " << num12(c.best_profit) << "  " << num12(c.equilibrium_profit) << "  "
                  << c.dropped_points << "  " << (c.pass ? "pass" : "FAIL") << "\n";
        for (std::size_t g = 0; g < c.deviation_prices.size(); ++g)
            csv += model.net.label(i) + "," + num12(c.deviation_prices[g]) + "," +
                   num12(c.induced_final_prices[g]) + "," + num12(c.profits[g]) + "\n";
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << csv;
    }
    std::cout << (all_pass ? "all firms pass" : "DEVIATION CHECK FAILED") << "\n";
    return all_pass ? kExitOk : kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium prices, centrality, and policy comparisons on "
                 "supply-chain influence networks"};
    app.require_subcommand(1);

    std::string path, format = "table", csv_path;
    double tol = default_tol();
    double beta = 1.0;
    bool exact = false, verify = false;

    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("input", path, "input JSON file")->required();
        if (with_format)
            cmd->add_option("--format", format, "output format: table|json|csv")
                ->check(CLI::IsMember({"table", "json", "csv"}));
        cmd->add_option("--tol", tol, "solver relative tolerance");
    };

    auto* c_validate = app.add_subcommand("validate", "validate a model file");
    c_validate->add_option("input", path)->required();

    auto* c_solve = app.add_subcommand("solve", "solve the equilibrium");
    add_common(c_solve);
    c_solve->add_flag("--exact", exact, "exact rational path (linear/power only)");
    c_solve->add_flag("--verify", verify, "run the deviation oracle after solving");

    auto* c_centrality = app.add_subcommand("centrality", "influentiality and centrality measures");
    add_common(c_centrality);
    c_centrality->add_option("--beta", beta, "Bonacich decay factor");

    auto* c_verify = app.add_subcommand("verify", "unilateral-deviation optimality check");
    add_common(c_verify, false);
    c_verify->add_option("--curve-csv", csv_path, "write per-firm deviation curves as CSV");

    auto* c_compare = app.add_subcommand("compare", "merger/tariff scenario comparison");
    add_common(c_compare);

    auto* c_sweep = app.add_subcommand("dwl-sweep", "deadweight loss over network sizes (CSV)");
    std::string family = "linear";
    double sweep_beta = 1.0, sweep_alpha = 1.0;
    int n_min = 1, n_max = 14;
    c_sweep->add_option("--family", family, "linear|power|logit")
        ->check(CLI::IsMember({"linear", "power", "logit"}));
    c_sweep->add_option("--beta", sweep_beta, "power demand exponent decay");
    c_sweep->add_option("--alpha", sweep_alpha, "logit demand alpha");
    c_sweep->add_option("--n-min", n_min);
    c_sweep->add_option("--n-max", n_max);

    auto* c_bounds = app.add_subcommand("logit-bounds", "lower bounds of the logit approximation");
    add_common(c_bounds);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_validate->parsed()) {
            try {
                load_model(path);
            } catch (const ValidationError& e) {
                for (const auto& v : e.violations) std::cerr << v << "\n";
                return kExitValidation;
            }
            std::cout << "valid\n";
            return kExitOk;
        }

        if (c_solve->parsed()) {
            const MarketModel model = load_model(path);
            const EquilibriumReport rep = solve(model, tol);
            if (exact) {
                const ExactSolution ex = solve_exact(model);
                std::cout << "P* = " << ex.P_star.str() << " = " << num12(ex.P_star_d()) << "\n";
                for (int i = 0; i < model.net.size(); ++i)
                    std::cout << "p(" << model.net.label(i) << ") = " << ex.prices[i].str()
                              << " = " << num12(static_cast<double>(ex.prices[i])) << "\n";
            }
            if (format == "json")
                std::cout << report_to_json(rep, model).dump(2) << "\n";
            else if (format == "csv")
                std::cout << report_to_csv(rep, model);
            else
                std::cout << report_to_table(rep, model);
            if (verify) return run_verify(model, tol, "");
            return kExitOk;
        }

        if (c_centrality->parsed()) {
            const MarketModel model = load_model(path);
            const EquilibriumReport rep = solve(model, tol);
            const auto bon = bonacich(model.net, beta);
            const auto deg = degree(model.net);
            if (format == "json") {
                json firms = json::array();
                for (int i = 0; i < model.net.size(); ++i)
                    firms.push_back({{"name", model.net.label(i)},
                                     {"influentiality", rep.markups[i]},
                                     {"bonacich", bon[i]},
                                     {"degree", deg[i]}});
                std::cout << json{{"beta", beta}, {"firms", firms}}.dump(2) << "\n";
            } else {
                std::cout << "firm      influentiality  bonacich(beta=" << num4(beta)
                          << ")  degree\n";
                for (int i = 0; i < model.net.size(); ++i) {
                    std::cout << model.net.label(i);
                    for (std::size_t s = model.net.label(i).size(); s < 8; ++s) std::cout << ' ';
                    std::cout << "  " << num4(rep.markups[i]) << "  " << num4(bon[i]) << "  "
                              << deg[i] << "\n";
                }
            }
            return kExitOk;
        }

        if (c_verify->parsed()) {
            const MarketModel model = load_model(path);
            return run_verify(model, tol, csv_path);
        }

        if (c_compare->parsed()) {
            const ScenarioFile f = load_scenario_file(path);
            const ComparisonReport rep = run_comparison(f.base, f.scenarios, tol);
            if (format == "json")
                std::cout << comparison_to_json(rep).dump(2) << "\n";
            else if (format == "csv")
                std::cout << comparison_to_csv(rep);
            else
                std::cout << comparison_to_table(rep);
            return kExitOk;
        }

        if (c_sweep->parsed()) {
            DemandSpec demand = family == "linear"  ? DemandSpec::linear(1, 1)
                                : family == "power" ? DemandSpec::power(1, 1, 1, sweep_beta)
                                                    : DemandSpec::logit(1, sweep_alpha);
            const auto rows = dwl_sweep(demand, n_min, n_max,
                                        {CanonicalKind::Empty, CanonicalKind::Chain});
            std::cout << sweep_to_csv(rows);
            return kExitOk;
        }

        if (c_bounds->parsed()) {
            const MarketModel model = load_model(path);
            const EquilibriumReport rep = solve(model, tol);
            const LogitBounds lb = logit_bounds(model, rep);
            if (format == "json") {
                json firms = json::array();
                for (int i = 0; i < model.net.size(); ++i)
                    firms.push_back({{"name", model.net.label(i)},
                                     {"lower_bound", lb.firm_lower_bounds[i]},
                                     {"gap", lb.firm_gaps[i]}});
                std::cout << json{{"P_star", rep.P_star},
                                  {"price_lower_bound", lb.price_lower_bound},
                                  {"gap", lb.gap},
                                  {"strict_bounds_hold", lb.strict_bounds_hold},
                                  {"firms", firms}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "P* = " << num12(rep.P_star)
                          << "  bound C+n/alpha = " << num12(lb.price_lower_bound)
                          << "  gap = " << num12(lb.gap) << "\n";
                for (int i = 0; i < model.net.size(); ++i)
                    std::cout << model.net.label(i) << ": bound " << num12(lb.firm_lower_bounds[i])
                              << " gap " << num12(lb.firm_gaps[i]) << "\n";
                std::cout << (lb.strict_bounds_hold ? "strict bounds hold" : "BOUNDS VIOLATED")
                          << "\n";
            }
            return kExitOk;
        }
    } catch (const ValidationError& e) {
        for (const auto& v : e.violations) std::cerr << v << "\n";
        return kExitValidation;
    } catch (const NoGainsFromTrade& e) {
        std::cerr << "no gains from trade: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NonMonotoneKernel& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return kExitSolver;
    } catch (const NoConvergence& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return kExitSolver;
    } catch (const WrongFamily& e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
