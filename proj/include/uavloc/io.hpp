#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "uavloc/objective.hpp"
#include "uavloc/scenario.hpp"
#include "uavloc/solvers.hpp"

namespace uavloc {

inline constexpr const char* kScenarioSchema = "uavloc-scenario/1";
inline constexpr const char* kReportSchema = "uavloc-report/1";
inline constexpr const char* kVersion = "1.0.0";

/// Shortest round-trip decimal text, locale independent.
std::string format_number(double v);

nlohmann::json scenario_to_json(const Scenario& scenario);
/// Rebuilds ground truth from the stored vehicle passes. Throws InputError on schema problems.
Scenario scenario_from_json(const nlohmann::json& doc);

void write_scenario(const std::string& path, const Scenario& scenario, const std::string& manifest_name = "");
Scenario read_scenario(const std::string& path);

struct CycleReport {
    int cycle = 0;
    double U_arrival = 0.0;
    double U_queue = 0.0;
};

struct MovementReport {
    std::string id;
    int case_label = 4;
    std::vector<CycleReport> cycles;
};

struct PathReport {
    std::string id;
    std::string path_class;
    double U = 0.0;
};

struct EvalReport {
    std::string deployment;
    std::size_t fleet = 0;
    ObjectiveWeights weights;
    ObjectiveValue value;
    std::vector<PathReport> paths;
    std::vector<MovementReport> movements;
};

EvalReport make_eval_report(const Objective& objective, const Deployment& u);
nlohmann::json eval_report_to_json(const EvalReport& report);
EvalReport eval_report_from_json(const nlohmann::json& doc);

struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string version = kVersion;
    double wall_seconds = 0.0;
};

nlohmann::json manifest_to_json(const RunManifest& m);

/// Writes `text` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

/// Headered CSV; the first line is "# manifest=<name>".
std::string trace_csv(const SolveResult& result, const std::string& manifest_name);
std::string comparison_csv(const std::vector<SolverSummary>& rows, const std::string& manifest_name);
std::string results_csv(const std::vector<SolveResult>& results, const std::string& manifest_name);

}  // namespace uavloc
