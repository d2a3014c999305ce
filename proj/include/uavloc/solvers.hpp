#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavloc/objective.hpp"
#include "uavloc/quantum.hpp"

namespace uavloc {

struct SolverConfig {
    std::size_t population = 20;
    std::size_t generations = 200;
    double theta_min = 0.01 * 3.14159265358979323846;
    double theta_max = 0.05 * 3.14159265358979323846;
    std::size_t mutation_width = 1;  // R_m, qubits flipped by the NOT gate
    std::uint64_t seed = 1;
    std::size_t fleet = 1;  // N_uav
    bool fine_tune = true;
    bool dedup = true;
    /// Rotation angle grows by the fitness-based step each generation; false applies the step alone.
    bool cumulative_rotation = true;
    std::size_t threads = 0;  // 0 = hardware concurrency

    // GA
    double crossover_rate = 0.8;
    double mutation_rate = -1.0;  // negative: 1/|I|
    std::size_t tournament = 2;

    std::size_t brute_budget = 1000000;
};

struct GenerationStats {
    double best_so_far = 0.0;  // fitness (-Z)
    double generation_best = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
};

struct SolveResult {
    std::string solver;
    std::uint64_t seed = 0;
    std::size_t fleet = 0;
    Deployment best;
    ObjectiveValue value;
    std::vector<GenerationStats> trace;
    std::size_t convergence_generation = 0;
    std::size_t first_optimum_generation = 0;
    double wall_seconds = 0.0;
    std::size_t evaluations = 0;
    bool exact = false;

    double mean_population_std() const;
};

/// Moves the UAV of the least uncertain deployed site to the most uncertain undeployed
/// neighbour of the most uncertain deployed site; returns it only if Z strictly drops.
std::optional<std::pair<Deployment, ObjectiveValue>> fine_tune(const Objective& objective, const Deployment& best,
                                                               const ObjectiveValue& best_value);

/// `incumbent`, when given, seeds the best-so-far (used for fleet-size sweeps).
SolveResult solve_iqga(const Objective& objective, const SolverConfig& config, const Deployment* incumbent = nullptr);
SolveResult solve_qga(const Objective& objective, SolverConfig config, const Deployment* incumbent = nullptr);
SolveResult solve_ga(const Objective& objective, const SolverConfig& config, const Deployment* incumbent = nullptr);
SolveResult solve_greedy_fcm(const Objective& objective, std::size_t fleet);
/// Throws BudgetExceeded when the number of candidates exceeds `budget`.
SolveResult solve_bruteforce(const Objective& objective, std::size_t fleet, std::size_t budget = 1000000,
                             std::size_t threads = 0);

bool is_solver_name(const std::string& name);
SolveResult run_solver(const std::string& name, const Objective& objective, const SolverConfig& config,
                       const Deployment* incumbent = nullptr);

/// Number of deployments with at most `fleet` UAVs over `sites` sites; saturates at SIZE_MAX.
std::size_t feasible_count(std::size_t sites, std::size_t fleet);

struct SolverSummary {
    std::string solver;
    std::size_t runs = 0;
    double mean_best_Z = 0.0;
    double std_best_Z = 0.0;
    double mean_convergence = 0.0;
    double mean_first_optimum = 0.0;
    double mean_population_std = 0.0;
    double mean_wall_seconds = 0.0;
    double time_difference = 0.0;         // |T_b - T'| / T_b against the first solver
    double convergence_difference = 0.0;  // same form on convergence generation
    double mean_flow_coverage = 0.0;
    double mean_path_coverage = 0.0;
};

/// One row per entry of `runs` (each entry holds one solver's results over seeds);
/// the first entry is the baseline for the difference columns.
std::vector<SolverSummary> compare_runs(const Objective& objective, const std::vector<std::vector<SolveResult>>& runs);

}  // namespace uavloc
