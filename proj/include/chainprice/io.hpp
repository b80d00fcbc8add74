#ifndef CHAINPRICE_IO_HPP
#define CHAINPRICE_IO_HPP

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "chainprice/scenario.hpp"

namespace chainprice {

/// Model JSON:
/// {"firms":[{"name":"L","cost":0.0},...], "edges":[["L","T"],...],
///  "c0":0.0, "demand":{"family":"linear","a":1,"b":1}}
/// Duplicate edges are rejected; edge order is irrelevant.
MarketModel parse_model(const nlohmann::json& j);
MarketModel load_model(const std::string& path);

DemandSpec parse_demand(const nlohmann::json& j);

/// Scenario file JSON:
/// {"base": <model>, "scenarios":[
///   {"name":"B","merge":["1","2"],"extra_edges":[["1+2","3"]]},
///   {"name":"tariff","tariffs":{"3":0.05},"t0":0.0}]}
struct ScenarioFile {
    MarketModel base;
    std::vector<Scenario> scenarios;
};

ScenarioFile parse_scenario_file(const nlohmann::json& j);
ScenarioFile load_scenario_file(const std::string& path);

nlohmann::json report_to_json(const EquilibriumReport& r, const MarketModel& m);
EquilibriumReport report_from_json(const nlohmann::json& j);

std::string report_to_csv(const EquilibriumReport& r, const MarketModel& m);
std::string report_to_table(const EquilibriumReport& r, const MarketModel& m);

nlohmann::json comparison_to_json(const ComparisonReport& rep);
/// Table 2 layout: one row per scenario, columns P*, total profit,
/// per-firm profits (base-model firm order), CS, SW.
std::string comparison_to_table(const ComparisonReport& rep);
std::string comparison_to_csv(const ComparisonReport& rep);

std::string sweep_to_csv(const std::vector<DwlSweepRow>& rows);

/// Locale-independent formatting: 12 significant digits.
std::string num12(double x);
/// 4 decimals for human tables.
std::string num4(double x);

} // namespace chainprice

#endif
