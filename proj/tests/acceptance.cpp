// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "uavloc/cycle_evidence.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/io.hpp"
#include "uavloc/objective.hpp"
#include "uavloc/presets.hpp"
#include "uavloc/quantum.hpp"
#include "uavloc/queue_uncertainty.hpp"
#include "uavloc/solvers.hpp"

using namespace uavloc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
    return buf;
}

bool rel_equal(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

double shoelace(const std::vector<PointTD>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const PointTD& a = v[i];
        const PointTD& b = v[(i + 1) % v.size()];
        s += a.t * b.d - b.t * a.d;
    }
    return std::abs(s) / 2.0;
}

// Small random scenarios shared by the oracle and endpoint checks.
struct Instance {
    std::string preset;
    std::size_t fleet = 1;
    std::unique_ptr<Scenario> scenario;
};

std::vector<Instance> small_instances() {
    const std::vector<std::string> presets{"grid2x2", "chain5", "grid2x3", "chain7", "grid2x4"};
    std::vector<Instance> out;
    for (int i = 0; i < 20; ++i) {
        ScenarioInputs in = make_preset(presets[i % 5]);
        in.seed = 100 + static_cast<std::uint64_t>(i);
        in.penetration = 0.05 + 0.05 * (i % 4);
        Instance inst;
        inst.preset = presets[i % 5];
        inst.fleet = 1 + static_cast<std::size_t>(i / 5);
        inst.scenario = std::make_unique<Scenario>(generate_scenario(in));
        out.push_back(std::move(inst));
    }
    return out;
}

Outcome oracle_equivalence(const std::vector<Instance>& instances) {
    int matched = 0;
    double slowest = 0.0;
    for (const Instance& inst : instances) {
        const auto t0 = Clock::now();
        const Objective obj(*inst.scenario, {});
        const double exact = solve_bruteforce(obj, inst.fleet).value.Z;
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            SolverConfig c;
            c.fleet = inst.fleet;
            c.seed = seed;
            best = std::min(best, solve_iqga(obj, c).value.Z);
        }
        slowest = std::max(slowest, seconds_since(t0));
        if (rel_equal(best, exact, 1e-9)) ++matched;
    }
    const double rate = matched / static_cast<double>(instances.size());
    return {rate >= 0.95 && slowest < 60.0,
            fmt("%.0f/%.0f instances match brute force (%.0f%%), slowest instance %.2f s", matched,
                static_cast<double>(instances.size()), 100.0 * rate, slowest)};
}

Outcome zero_endpoint(const std::vector<const Scenario*>& scenarios) {
    int zero = 0;
    for (const Scenario* sc : scenarios) {
        const Objective obj(*sc, {});
        if (obj.evaluate(Deployment::all(sc->network.site_count())).Z == 0.0) ++zero;
    }
    return {zero == static_cast<int>(scenarios.size()),
            fmt("Z(all ones) = 0 on %.0f/%.0f scenarios", zero, static_cast<double>(scenarios.size()))};
}

// Sweep 0..18 on shinan18, each fleet size seeded with the previous optimum.
std::vector<double> shinan_sweep(const Objective& obj) {
    std::vector<double> z;
    Deployment prev = Deployment::none(obj.sites());
    for (std::size_t n = 0; n <= obj.sites(); ++n) {
        SolverConfig c;
        c.fleet = n;
        c.seed = 1;
        const SolveResult r = solve_iqga(obj, c, n == 0 ? nullptr : &prev);
        prev = r.best;
        z.push_back(r.value.Z);
    }
    return z;
}

Outcome monotone_sweep(const std::vector<double>& z) {
    int violations = 0;
    double worst = 0.0;
    for (std::size_t n = 1; n < z.size(); ++n) {
        const double rise = z[n] - z[n - 1];
        if (rise > 1e-9) ++violations, worst = std::max(worst, rise);
    }
    return {violations == 0,
            fmt("%.0f increases over N = 0..%.0f (largest %.3g), Z(0) = %.4f", violations,
                static_cast<double>(z.size() - 1), worst, z.front())};
}

Outcome reduction_at_seven(const std::vector<double>& z) {
    const double ratio = z[7] / z[0];
    return {ratio <= 0.5, fmt("Z(7)/Z(0) = %.4f / %.4f = %.4f", z[7], z[0], ratio)};
}

Outcome iqga_vs_qga(const Objective& obj) {
    int faster = 0;
    double iqga_std = 0.0, qga_std = 0.0, iqga_conv = 0.0, qga_conv = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SolverConfig c;
        c.fleet = 9;
        c.seed = seed;
        const SolveResult a = solve_iqga(obj, c);
        const SolveResult b = solve_qga(obj, c);
        if (a.convergence_generation <= b.convergence_generation) ++faster;
        iqga_std += a.mean_population_std() / 10.0;
        qga_std += b.mean_population_std() / 10.0;
        iqga_conv += a.convergence_generation / 10.0;
        qga_conv += b.convergence_generation / 10.0;
    }
    const bool conv_ok = faster >= 7, std_ok = iqga_std > qga_std;
    std::string detail = fmt("IQGA converges no later than QGA in %.0f/10 seeds (mean %.1f vs %.1f); ", faster,
                             iqga_conv, qga_conv);
    detail += fmt("mean population std %.2f vs %.2f", iqga_std, qga_std);
    return {conv_ok && std_ok, detail};
}

Outcome geometry_suite(const std::vector<const Scenario*>& scenarios) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int area_fail = 0, range_fail = 0;
    for (int k = 0; k < 1000; ++k) {
        QueueGeometry g;
        g.w_a = 1.0 + 4.0 * unit(rng);
        g.w_d = g.w_a + 0.5 + 5.0 * unit(rng);
        g.R = 10.0 + 80.0 * unit(rng);
        std::vector<PointTD> anchors;
        const int n_anchor = static_cast<int>(rng() % 4) + 1;
        while (static_cast<int>(anchors.size()) < n_anchor) {
            const PointTD p{unit(rng) * g.apex_time(), unit(rng) * g.apex_distance()};
            if (g.contains(p, 0.0)) anchors.push_back(p);
        }
        std::optional<double> d_N;
        if (rng() % 3 != 0) d_N = unit(rng) * g.apex_distance();
        const QueueUncertainty q = queue_uncertainty_case4(g, anchors, d_N, false);
        const double poly = q.vertices.size() >= 3 ? shoelace(q.vertices) : 0.0;
        if (!(std::abs(q.S - poly) <= 1e-9 * std::max(q.S, poly) || (q.S == 0.0 && poly < 1e-12))) ++area_fail;
        if (!(q.U >= 0.0 && q.U <= 1.0)) ++range_fail;

        const double C = 60.0 + 60.0 * unit(rng), lambda = 0.2 + 0.6 * unit(rng);
        const double t_F = unit(rng) * C, t_G = t_F + unit(rng) * (C - t_F);
        LoopCycleObservation lo{lambda, C, t_F, t_G, static_cast<int>(rng() % 10), static_cast<int>(rng() % 10)};
        const ArrivalUncertainty al = arrival_uncertainty_case4_loop(lo);
        CycleArrivalObservation co;
        co.type = static_cast<CvCycleType>(rng() % 4);
        co.lambda_u = lambda;
        co.C = C;
        co.t_F = t_F;
        co.t_G = t_G;
        co.T_HL = unit(rng) * C;
        co.T_GH = unit(rng) * C;
        co.lambda_FG_ub = unit(rng) * lambda;
        const ArrivalUncertainty ac = arrival_uncertainty_case4_cv(co);
        for (double u : {al.U, ac.U}) {
            if (!(u >= 0.0 && u <= 1.0)) ++range_fail;
        }
    }
    const double synthetic_seconds = seconds_since(t0);

    int contained = 0, checked = 0;
    for (const Scenario* sc : scenarios) {
        const ObservationSet obs = extract_observations(*sc);
        const UncertaintyTable table = build_uncertainty_table(*sc);
        for (const MovementCaseTable& t : table.movements) {
            for (int c = 0; c < 4; ++c) {
                for (double u : t.arrival[c]) range_fail += !(u >= 0.0 && u <= 1.0);
                for (double u : t.queue[c]) range_fail += !(u >= 0.0 && u <= 1.0);
            }
        }
        for (std::size_t m = 0; m < sc->network.movements().size(); ++m) {
            const QueueGeometry g = queue_geometry(*sc, m);
            for (int j = 0; j < sc->cycle_count(m); ++j) {
                const CycleTruth& ct = sc->truth.movements[m].cycles[j];
                if (!ct.consistent) continue;
                const QueueUncertainty q = case4_queue_region(*sc, obs, m, j);
                ++checked;
                if (ct.boq == 0.0 || region_contains(g, q, {ct.boq_time, ct.boq})) ++contained;
            }
        }
    }
    const bool pass = area_fail == 0 && range_fail == 0 && contained == checked && synthetic_seconds < 10.0;
    std::string detail = fmt("area mismatches %.0f/1000, U out of range %.0f; ", area_fail, range_fail);
    detail += fmt("truth BoQ inside %.0f/%.0f consistent cycles; %.2f s", contained, checked, synthetic_seconds);
    return {pass, detail};
}

Outcome quantum_suite() {
    std::mt19937_64 rng = stream(77, 0, 0, 0);
    QuantumChromosome q = uniform_chromosome(10);
    std::vector<std::uint8_t> best(10);
    for (int i = 0; i < 10000; ++i) {
        for (auto& b : best) b = unit_draw(rng) < 0.5;
        rotate(q, best, unit_draw(rng) * 0.2);
    }
    const double norm = normalisation_error(q);

    bool involution = true;
    for (int i = 0; i < 1000; ++i) {
        const double a = unit_draw(rng);
        QuantumChromosome x{{std::sqrt(a), std::sqrt(1.0 - a)}};
        const QuantumChromosome y = x;
        not_gate(x, {0});
        not_gate(x, {0});
        involution = involution && x[0].alpha == y[0].alpha && x[0].beta == y[0].beta;
    }

    const QuantumChromosome h = uniform_chromosome(1);
    int ones = 0;
    for (int i = 0; i < 100000; ++i) ones += measure(h, rng)[0];
    const double freq = ones / 100000.0;
    std::string detail = fmt("normalisation error %.2e after 1e5 qubit rotations, ", norm);
    detail += involution ? "NOT gate is an involution, " : "NOT gate is not an involution, ";
    detail += fmt("P(1) = %.4f over 1e5 draws", freq);
    return {norm <= 1e-12 && involution && std::abs(freq - 0.5) <= 0.01, detail};
}

struct CycleAreas {
    std::vector<std::vector<double>> arrival, queue;  // [movement][cycle]
};

CycleAreas case4_areas(const Scenario& sc, const EvidenceOptions& opts = {}) {
    const ObservationSet obs = extract_observations(sc);
    CycleAreas a;
    for (std::size_t m = 0; m < sc.network.movements().size(); ++m) {
        a.arrival.emplace_back();
        a.queue.emplace_back();
        for (int j = 0; j < sc.cycle_count(m); ++j) {
            a.arrival.back().push_back(case4_arrival_envelope(sc, obs, m, j, opts).area(false));
            a.queue.back().push_back(case4_queue_region(sc, obs, m, j, opts).S);
        }
    }
    return a;
}

Outcome information_monotonicity() {
    ScenarioInputs in = preset_grid(2, 3);
    in.penetration = 0.15;
    in.signals.horizon = 1800.0;
    in.seed = 8;
    const Scenario base = generate_scenario(in);
    const CycleAreas before = case4_areas(base);
    std::mt19937_64 rng(99);
    int cycles = 0, increases = 0;

    // Promote one vehicle at a time to a CV.
    while (cycles < 1000) {
        const std::size_t v = rng() % base.vehicles.size();
        if (base.vehicles[v].is_cv) continue;
        std::vector<VehicleRecord> vehicles = base.vehicles;
        vehicles[v].is_cv = true;
        const Scenario more = assemble_scenario(base.inputs, vehicles);
        const CycleAreas after = case4_areas(more);
        for (const MovementPass& p : base.vehicles[v].passes) {
            for (int j : {p.cycle - 1, p.cycle}) {
                if (j < 0 || j >= base.cycle_count(p.movement)) continue;
                ++cycles;
                increases += after.arrival[p.movement][j] > before.arrival[p.movement][j] + 1e-9;
                increases += after.queue[p.movement][j] > before.queue[p.movement][j] + 1e-9;
            }
        }
    }

    // Switch detectors on: first the existing ones, then one on every link without one.
    const CycleAreas no_loops = case4_areas(base, {true, false});
    int loop_cycles = 0;
    auto compare = [&](const CycleAreas& lo, const CycleAreas& hi) {
        for (std::size_t m = 0; m < lo.arrival.size(); ++m) {
            for (std::size_t j = 0; j < lo.arrival[m].size(); ++j) {
                ++loop_cycles;
                increases += hi.arrival[m][j] > lo.arrival[m][j] + 1e-9;
                increases += hi.queue[m][j] > lo.queue[m][j] + 1e-9;
            }
        }
    };
    compare(no_loops, before);
    ScenarioInputs wired = base.inputs;
    for (const auto& link : base.network.links()) {
        const bool has = std::any_of(wired.loops.begin(), wired.loops.end(),
                                     [&](const LoopDetector& d) { return d.link == link.id; });
        if (!has && link.length > 30.0) wired.loops.push_back({link.id, 25.0});
    }
    const Scenario looped = assemble_scenario(wired, base.vehicles);
    compare(before, case4_areas(looped));

    return {increases == 0, fmt("%.0f area increases over %.0f CV-promotion cycles and %.0f loop cycles", increases,
                                cycles, loop_cycles)};
}

bool same_result(const SolveResult& a, const SolveResult& b) {
    if (!(a.best == b.best) || a.value.Z != b.value.Z || a.trace.size() != b.trace.size()) return false;
    for (std::size_t g = 0; g < a.trace.size(); ++g) {
        const auto &x = a.trace[g], &y = b.trace[g];
        if (x.best_so_far != y.best_so_far || x.generation_best != y.generation_best || x.mean != y.mean ||
            x.stddev != y.stddev) {
            return false;
        }
    }
    return a.convergence_generation == b.convergence_generation &&
           a.first_optimum_generation == b.first_optimum_generation;
}

Outcome determinism() {
    int mismatches = 0, runs = 0;
    for (const std::string name : {"shinan18", "grid3x3"}) {
        const std::string a = scenario_to_json(generate_scenario(make_preset(name))).dump();
        const std::string b = scenario_to_json(generate_scenario(make_preset(name))).dump();
        ++runs;
        mismatches += a != b;
    }

    const Scenario big = generate_scenario(make_preset("shinan18"));
    for (const std::string solver : {"iqga", "qga", "ga"}) {
        SolverConfig c;
        c.fleet = 6;
        c.seed = 3;
        c.generations = 60;
        std::vector<SolveResult> results;
        for (std::size_t threads : {1, 4, 4}) {
            const Objective obj(big, {});  // fresh cache each run
            c.threads = threads;
            results.push_back(run_solver(solver, obj, c));
        }
        for (std::size_t i = 1; i < results.size(); ++i, ++runs) mismatches += !same_result(results[0], results[i]);
    }
    {
        const Objective a(big, {}), b(big, {});
        ++runs;
        mismatches += !same_result(solve_greedy_fcm(a, 7), solve_greedy_fcm(b, 7));
    }
    {
        const Scenario small = generate_scenario(make_preset("grid2x4"));
        const Objective a(small, {}), b(small, {});
        ++runs;
        mismatches += !same_result(solve_bruteforce(a, 3, 1000000, 1), solve_bruteforce(b, 3, 1000000, 4));
    }
    return {mismatches == 0, fmt("%.0f mismatches over %.0f repeated runs (1 and 4 threads)", mismatches, runs)};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    };

    const std::vector<Instance> instances = small_instances();
    const Scenario shinan = generate_scenario(preset_shinan18());
    const Objective shinan_obj(shinan, {});
    std::vector<const Scenario*> generated{&shinan};
    for (const Instance& inst : instances) generated.push_back(inst.scenario.get());
    std::vector<double> sweep;

    report(1, "oracle-equivalence", [&] { return oracle_equivalence(instances); });
    report(2, "zero-uncertainty-endpoint", [&] { return zero_endpoint(generated); });
    report(3, "monotone-sweep", [&] {
        sweep = shinan_sweep(shinan_obj);
        return monotone_sweep(sweep);
    });
    report(4, "reduction-at-7-uavs", [&] {
        if (sweep.size() < 8) sweep = shinan_sweep(shinan_obj);
        return reduction_at_seven(sweep);
    });
    report(5, "iqga-vs-qga", [&] { return iqga_vs_qga(shinan_obj); });
    report(6, "queue-geometry", [&] { return geometry_suite(generated); });
    report(7, "quantum-operators", quantum_suite);
    report(8, "information-monotonicity", information_monotonicity);
    report(9, "determinism", determinism);

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
