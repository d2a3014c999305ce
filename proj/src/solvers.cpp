#include "uavloc/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "uavloc/coverage.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/parallel.hpp"

namespace uavloc {

namespace {

enum Purpose : std::uint64_t { kMeasure = 1, kRepair = 2, kDedup = 3, kInit = 4, kSelect = 5 };

using Bits = std::vector<std::uint8_t>;
using Clock = std::chrono::steady_clock;

GenerationStats stats_of(const std::vector<double>& fitness, double best_so_far) {
    GenerationStats s;
    s.best_so_far = best_so_far;
    s.generation_best = *std::max_element(fitness.begin(), fitness.end());
    double sum = 0.0;
    for (double f : fitness) sum += f;
    s.mean = sum / static_cast<double>(fitness.size());
    double var = 0.0;
    for (double f : fitness) var += (f - s.mean) * (f - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(fitness.size()));
    return s;
}

void finish_trace_metrics(SolveResult& r) {
    if (r.trace.empty()) return;
    const double final_best = r.trace.back().best_so_far;
    r.first_optimum_generation = r.trace.size();
    for (std::size_t g = 0; g < r.trace.size(); ++g) {
        if (r.trace[g].best_so_far == final_best) {
            r.first_optimum_generation = g;
            break;
        }
    }
    r.convergence_generation = r.trace.size();
    for (std::size_t g = r.trace.size(); g-- > 0;) {
        if (r.trace[g].generation_best != final_best) break;
        r.convergence_generation = g;
    }
}

std::vector<ObjectiveValue> evaluate_all(const Objective& objective, const std::vector<Bits>& pop, std::size_t fleet,
                                         std::size_t threads) {
    std::vector<ObjectiveValue> out(pop.size());
    parallel_for(pop.size(), threads, [&](std::size_t k) { out[k] = objective.evaluate(Deployment(pop[k], fleet)); });
    return out;
}

void check_config(const Objective& objective, const SolverConfig& c) {
    const std::size_t n = objective.sites();
    if (c.population == 0 || c.generations == 0) throw InputError("population and generations must be positive");
    if (!(c.theta_min > 0.0) || !(c.theta_min <= c.theta_max)) throw InputError("rotation bounds need 0 < theta_min <= theta_max");
    if (n > 0 && (c.mutation_width < 1 || c.mutation_width > n)) throw InputError("mutation width must lie in [1, |I|]");
}

std::vector<std::size_t> pick_positions(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace

double SolveResult::mean_population_std() const {
    if (trace.empty()) return 0.0;
    double s = 0.0;
    for (const auto& g : trace) s += g.stddev;
    return s / static_cast<double>(trace.size());
}

std::size_t feasible_count(std::size_t sites, std::size_t fleet) {
    const std::size_t cap = std::numeric_limits<std::size_t>::max();
    std::size_t total = 0, c = 1;  // c = C(sites, k)
    for (std::size_t k = 0; k <= std::min(fleet, sites); ++k) {
        if (k > 0) {
            // c * (sites - k + 1) / k without overflow where possible
            const long double next = static_cast<long double>(c) * (sites - k + 1) / k;
            if (next > static_cast<long double>(cap)) return cap;
            c = static_cast<std::size_t>(std::llround(next));
        }
        if (total > cap - c) return cap;
        total += c;
    }
    return total;
}

std::optional<std::pair<Deployment, ObjectiveValue>> fine_tune(const Objective& objective, const Deployment& best,
                                                               const ObjectiveValue& best_value) {
    const Network& net = objective.network();
    const std::vector<double> unc = objective.site_uncertainty(best);
    std::size_t donor = Network::npos, source = Network::npos;
    for (std::size_t s = 0; s < best.size(); ++s) {
        if (!best[s]) continue;
        if (donor == Network::npos || unc[s] < unc[donor]) donor = s;
        if (source == Network::npos || unc[s] > unc[source]) source = s;
    }
    if (donor == Network::npos) return std::nullopt;

    const std::size_t node = net.site_intersection(source);
    std::vector<std::size_t> around = net.upstream_neighbors(node);
    for (std::size_t i : net.downstream_neighbors(node)) around.push_back(i);
    std::size_t target = Network::npos;
    for (std::size_t i : around) {
        const std::size_t s = net.site_of(i);
        if (s == Network::npos || best[s]) continue;
        if (target == Network::npos || unc[s] > unc[target] || (unc[s] == unc[target] && s < target)) target = s;
    }
    if (target == Network::npos) return std::nullopt;

    Bits bits = best.bits();
    bits[donor] = 0;
    bits[target] = 1;
    Deployment cand(bits, best.fleet_limit());
    ObjectiveValue v = objective.evaluate(cand);
    if (v.Z < best_value.Z) return std::make_pair(cand, v);
    return std::nullopt;
}

SolveResult solve_iqga(const Objective& objective, const SolverConfig& config, const Deployment* incumbent) {
    check_config(objective, config);
    const auto t0 = Clock::now();
    const std::size_t n = objective.sites(), P = config.population;
    SolveResult res;
    res.solver = config.dedup || config.fine_tune ? "iqga" : "qga";
    res.seed = config.seed;
    res.fleet = config.fleet;

    std::vector<QuantumChromosome> Q(P, uniform_chromosome(n));
    std::vector<double> fitness(P, 0.0);
    std::vector<double> sigma(P, 0.0);  // rotation angle per chromosome
    Bits best_bits(n, 0);
    ObjectiveValue best_value;
    double best_fit = -std::numeric_limits<double>::infinity();
    if (incumbent) {
        best_bits = incumbent->bits();
        best_value = objective.evaluate(Deployment(best_bits, config.fleet));
        best_fit = best_value.fitness();
        ++res.evaluations;
    }

    for (std::size_t g = 0; g < config.generations; ++g) {
        if (g > 0) {
            for (std::size_t k = 0; k < P; ++k) {
                const double step = rotation_angle(fitness[k], best_fit, config.theta_min, config.theta_max);
                sigma[k] = config.cumulative_rotation ? sigma[k] + step : step;
                rotate(Q[k], best_bits, sigma[k]);
            }
        }
        std::vector<Bits> pop(P);
        for (std::size_t k = 0; k < P; ++k) {
            auto mrng = stream(config.seed, g, k, kMeasure);
            auto rrng = stream(config.seed, g, k, kRepair);
            pop[k] = measure(Q[k], mrng);
            repair(pop[k], config.fleet, rrng);
            if (!config.dedup) continue;
            const bool duplicate = std::find(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(k), pop[k]) !=
                                   pop.begin() + static_cast<std::ptrdiff_t>(k);
            if (duplicate && n > 0) {
                auto drng = stream(config.seed, g, k, kDedup);
                not_gate(Q[k], pick_positions(n, config.mutation_width, drng));
                pop[k] = measure(Q[k], drng);
                repair(pop[k], config.fleet, drng);
            }
        }
        const auto values = evaluate_all(objective, pop, config.fleet, config.threads);
        res.evaluations += P;

        bool improved = false;
        for (std::size_t k = 0; k < P; ++k) {
            fitness[k] = values[k].fitness();
            if (fitness[k] > best_fit) {
                best_fit = fitness[k];
                best_bits = pop[k];
                best_value = values[k];
                improved = true;
            }
        }
        if (improved && config.fine_tune) {
            // Greedy neighbourhood moves until none helps.
            while (auto cand = fine_tune(objective, Deployment(best_bits, config.fleet), best_value)) {
                ++res.evaluations;
                best_bits = cand->first.bits();
                best_value = cand->second;
                best_fit = best_value.fitness();
            }
            ++res.evaluations;
        }
        res.trace.push_back(stats_of(fitness, best_fit));
    }
    res.best = Deployment(best_bits, config.fleet);
    res.value = best_value;
    finish_trace_metrics(res);
    res.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

SolveResult solve_qga(const Objective& objective, SolverConfig config, const Deployment* incumbent) {
    config.dedup = false;
    config.fine_tune = false;
    return solve_iqga(objective, config, incumbent);
}

SolveResult solve_ga(const Objective& objective, const SolverConfig& config, const Deployment* incumbent) {
    check_config(objective, config);
    const auto t0 = Clock::now();
    const std::size_t n = objective.sites(), P = config.population;
    const double mutation = config.mutation_rate >= 0.0 ? config.mutation_rate : (n ? 1.0 / double(n) : 0.0);
    SolveResult res;
    res.solver = "ga";
    res.seed = config.seed;
    res.fleet = config.fleet;

    std::vector<Bits> pop(P, Bits(n, 0));
    for (std::size_t k = 0; k < P; ++k) {
        auto rng = stream(config.seed, 0, k, kInit);
        for (auto& b : pop[k]) b = unit_draw(rng) < 0.5 ? 1 : 0;
        repair(pop[k], config.fleet, rng);
    }
    if (incumbent) pop[0] = incumbent->bits();

    Bits best_bits(n, 0);
    ObjectiveValue best_value;
    double best_fit = -std::numeric_limits<double>::infinity();
    std::vector<double> fitness(P);
    for (std::size_t g = 0; g < config.generations; ++g) {
        if (g > 0) {
            std::size_t elite = 0;
            for (std::size_t k = 1; k < P; ++k) {
                if (fitness[k] > fitness[elite]) elite = k;
            }
            std::vector<Bits> next(P);
            next[0] = pop[elite];
            for (std::size_t k = 1; k < P; ++k) {
                auto rng = stream(config.seed, g, k, kSelect);
                auto tournament = [&]() -> const Bits& {
                    std::size_t win = static_cast<std::size_t>(unit_draw(rng) * double(P));
                    for (std::size_t t = 1; t < config.tournament; ++t) {
                        const std::size_t c = static_cast<std::size_t>(unit_draw(rng) * double(P));
                        if (fitness[c] > fitness[win]) win = c;
                    }
                    return pop[win];
                };
                const Bits& a = tournament();
                const Bits& b = tournament();
                Bits child = a;
                if (n > 1 && unit_draw(rng) < config.crossover_rate) {
                    const std::size_t point = 1 + static_cast<std::size_t>(unit_draw(rng) * double(n - 1));
                    std::copy(b.begin() + static_cast<std::ptrdiff_t>(point), b.end(),
                              child.begin() + static_cast<std::ptrdiff_t>(point));
                }
                for (auto& bit : child) {
                    if (unit_draw(rng) < mutation) bit ^= 1;
                }
                repair(child, config.fleet, rng);
                next[k] = std::move(child);
            }
            pop = std::move(next);
        }
        const auto values = evaluate_all(objective, pop, config.fleet, config.threads);
        res.evaluations += P;
        for (std::size_t k = 0; k < P; ++k) {
            fitness[k] = values[k].fitness();
            if (fitness[k] > best_fit) {
                best_fit = fitness[k];
                best_bits = pop[k];
                best_value = values[k];
            }
        }
        res.trace.push_back(stats_of(fitness, best_fit));
    }
    res.best = Deployment(best_bits, config.fleet);
    res.value = best_value;
    finish_trace_metrics(res);
    res.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

SolveResult solve_greedy_fcm(const Objective& objective, std::size_t fleet) {
    const auto t0 = Clock::now();
    const Scenario& sc = objective.scenario();
    const std::size_t n = objective.sites();
    SolveResult res;
    res.solver = "greedy-fcm";
    res.fleet = fleet;
    Bits bits(n, 0);
    for (std::size_t step = 0; step < std::min(fleet, n); ++step) {
        std::size_t pick = Network::npos;
        double pick_cov = -1.0;
        for (std::size_t s = 0; s < n; ++s) {
            if (bits[s]) continue;
            bits[s] = 1;
            const double cov = covered_link_flow(sc, Deployment(bits, n));
            bits[s] = 0;
            if (cov > pick_cov) {
                pick_cov = cov;
                pick = s;
            }
        }
        bits[pick] = 1;
    }
    res.best = Deployment(bits, fleet);
    res.value = objective.evaluate(res.best);
    res.evaluations = 1;
    res.trace.push_back({res.value.fitness(), res.value.fitness(), res.value.fitness(), 0.0});
    finish_trace_metrics(res);
    res.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

SolveResult solve_bruteforce(const Objective& objective, std::size_t fleet, std::size_t budget, std::size_t threads) {
    const auto t0 = Clock::now();
    const std::size_t n = objective.sites();
    const std::size_t count = feasible_count(n, fleet);
    if (count > budget) {
        throw BudgetExceeded("exhaustive search needs " + std::to_string(count) + " evaluations (budget " +
                             std::to_string(budget) + "); use a heuristic solver");
    }
    std::vector<Bits> all;
    all.reserve(count);
    for (std::size_t k = 0; k <= std::min(fleet, n); ++k) {
        Bits sel(n, 0);
        std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(k), 1);
        do {
            all.push_back(sel);
        } while (std::prev_permutation(sel.begin(), sel.end()));
    }
    const auto values = evaluate_all(objective, all, fleet, threads);
    std::size_t best = 0;
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (values[i].Z < values[best].Z || (values[i].Z == values[best].Z && all[i] < all[best])) best = i;
    }
    SolveResult res;
    res.solver = "brute";
    res.fleet = fleet;
    res.exact = true;
    res.best = Deployment(all[best], fleet);
    res.value = values[best];
    res.evaluations = all.size();
    res.trace.push_back({res.value.fitness(), res.value.fitness(), res.value.fitness(), 0.0});
    finish_trace_metrics(res);
    res.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

bool is_solver_name(const std::string& name) {
    return name == "iqga" || name == "qga" || name == "ga" || name == "greedy-fcm" || name == "brute";
}

SolveResult run_solver(const std::string& name, const Objective& objective, const SolverConfig& config,
                       const Deployment* incumbent) {
    if (name == "iqga") return solve_iqga(objective, config, incumbent);
    if (name == "qga") return solve_qga(objective, config, incumbent);
    if (name == "ga") return solve_ga(objective, config, incumbent);
    if (name == "greedy-fcm") return solve_greedy_fcm(objective, config.fleet);
    if (name == "brute") return solve_bruteforce(objective, config.fleet, config.brute_budget, config.threads);
    throw InputError("unknown solver '" + name + "' (expected iqga, qga, ga, greedy-fcm or brute)");
}

std::vector<SolverSummary> compare_runs(const Objective& objective, const std::vector<std::vector<SolveResult>>& runs) {
    std::vector<SolverSummary> rows;
    for (const auto& group : runs) {
        if (group.empty()) throw InputError("compare_runs needs at least one result per solver");
        SolverSummary s;
        s.solver = group.front().solver;
        s.runs = group.size();
        const double k = static_cast<double>(group.size());
        for (const SolveResult& r : group) {
            s.mean_best_Z += r.value.Z / k;
            s.mean_convergence += static_cast<double>(r.convergence_generation) / k;
            s.mean_first_optimum += static_cast<double>(r.first_optimum_generation) / k;
            s.mean_population_std += r.mean_population_std() / k;
            s.mean_wall_seconds += r.wall_seconds / k;
            const CoverageReport cov = coverage(objective.scenario(), r.best);
            s.mean_flow_coverage += cov.flow_coverage() / k;
            s.mean_path_coverage += cov.path_coverage() / k;
        }
        double var = 0.0;
        for (const SolveResult& r : group) var += (r.value.Z - s.mean_best_Z) * (r.value.Z - s.mean_best_Z);
        s.std_best_Z = std::sqrt(var / k);
        rows.push_back(s);
    }
    for (SolverSummary& s : rows) {
        const SolverSummary& b = rows.front();
        s.time_difference = b.mean_wall_seconds > 0.0 ? std::abs(b.mean_wall_seconds - s.mean_wall_seconds) / b.mean_wall_seconds : 0.0;
        s.convergence_difference =
            b.mean_convergence > 0.0 ? std::abs(b.mean_convergence - s.mean_convergence) / b.mean_convergence : 0.0;
    }
    return rows;
}

}  // namespace uavloc
