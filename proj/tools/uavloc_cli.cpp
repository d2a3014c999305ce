// Command-line entry point: gen, eval, optimize, compare.
#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "uavloc/errors.hpp"
#include "uavloc/io.hpp"
#include "uavloc/presets.hpp"

using namespace uavloc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct GenOptions {
    std::string network = "shinan18";
    std::string out = "scenario.json";
    double penetration = 0.1;
    std::uint64_t seed = 1;
    double horizon = 0.0;
    double demand_scale = 1.0;
    std::string process;
};

struct EvalOptions {
    std::string scenario;
    std::string deploy = "none";
    long nuav = -1;
    std::string weights = "moum";
    std::string out = "report.json";
};

struct OptimizeOptions {
    std::string scenario;
    std::string solver = "iqga";
    std::size_t nuav = 1;
    std::string sweep;
    std::uint64_t seed = 1;
    std::size_t seeds = 1;
    std::size_t population = 20;
    std::size_t generations = 200;
    std::size_t mutation_width = 1;
    std::size_t threads = 0;
    std::size_t budget = 1000000;
    std::string weights = "moum";
    std::string out_dir = "results";
};

struct CompareOptions {
    std::string scenario;
    std::vector<std::string> solvers;
    std::size_t nuav = 1;
    std::uint64_t seed = 1;
    std::size_t seeds = 10;
    std::size_t population = 20;
    std::size_t generations = 200;
    std::size_t threads = 0;
    std::size_t budget = 1000000;
    std::string weights = "moum";
    std::string out_dir = "results";
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void write_manifest(const std::string& path, RunManifest m, Clock::time_point t0) {
    m.wall_seconds = seconds_since(t0);
    write_file_atomic(path, manifest_to_json(m).dump(1) + "\n");
}

std::string manifest_path_for(const std::string& out) { return out + ".manifest.json"; }

ScenarioInputs load_inputs(const GenOptions& o) {
    if (is_preset_name(o.network)) return make_preset(o.network);
    if (!fs::exists(o.network)) {
        throw InputError("--network: '" + o.network + "' is neither a preset (shinan18, gridRxC, chainN) nor a file");
    }
    // A scenario file: reuse its network, signals, flows and loops.
    return scenario_from_json(json::parse(read_file(o.network))).inputs;
}

int cmd_gen(const GenOptions& o) {
    const auto t0 = Clock::now();
    ScenarioInputs in = load_inputs(o);
    in.penetration = o.penetration;
    in.seed = o.seed;
    if (o.horizon > 0.0) in.signals.horizon = o.horizon;
    if (o.demand_scale != 1.0) {
        for (double& d : in.flow.path_demand_vph) d *= o.demand_scale;
    }
    if (o.process == "poisson") in.flow.process = ArrivalProcess::poisson;
    else if (o.process == "uniform") in.flow.process = ArrivalProcess::uniform;
    else if (!o.process.empty()) throw InputError("--process must be poisson or uniform");

    const Scenario sc = generate_scenario(std::move(in));
    const std::string manifest = manifest_path_for(o.out);
    write_scenario(o.out, sc, fs::path(manifest).filename().string());
    RunManifest m;
    m.command = "gen";
    m.config = {{"network", o.network}, {"penetration", o.penetration}, {"horizon", sc.inputs.signals.horizon},
                {"demand_scale", o.demand_scale}, {"process", o.process}};
    m.seeds = {o.seed};
    m.outputs = {o.out};
    write_manifest(manifest, m, t0);
    std::cout << "wrote " << o.out << ": " << sc.network.site_count() << " sites, " << sc.network.paths().size()
              << " paths, " << sc.vehicles.size() << " vehicles\n";
    return 0;
}

Deployment parse_deployment(const std::string& text, const Network& net, long nuav) {
    const std::size_t n = net.site_count();
    std::vector<std::uint8_t> bits(n, 0);
    if (text == "all") {
        bits.assign(n, 1);
    } else if (text != "none" && !text.empty()) {
        const bool bitstring = text.find_first_not_of("01") == std::string::npos && text.size() == n;
        if (bitstring) {
            for (std::size_t s = 0; s < n; ++s) bits[s] = text[s] == '1';
        } else {
            std::stringstream ss(text);
            std::string id;
            while (std::getline(ss, id, ',')) {
                const std::size_t site = net.site_of(net.intersection_index(id));
                if (site == Network::npos) throw InputError("--deploy: '" + id + "' is a boundary node");
                bits[site] = 1;
            }
        }
    }
    std::size_t count = 0;
    for (auto b : bits) count += b;
    return Deployment(bits, nuav < 0 ? count : static_cast<std::size_t>(nuav));
}

int cmd_eval(const EvalOptions& o) {
    const auto t0 = Clock::now();
    const Scenario sc = read_scenario(o.scenario);
    const Objective objective(sc, ObjectiveWeights::parse(o.weights));
    const Deployment u = parse_deployment(o.deploy, sc.network, o.nuav);
    const EvalReport report = make_eval_report(objective, u);
    const std::string manifest = manifest_path_for(o.out);
    json doc = eval_report_to_json(report);
    doc["manifest"] = fs::path(manifest).filename().string();
    write_file_atomic(o.out, doc.dump(1) + "\n");
    RunManifest m;
    m.command = "eval";
    m.config = {{"deploy", o.deploy}, {"nuav", o.nuav}, {"weights", o.weights}};
    m.inputs = {o.scenario};
    m.outputs = {o.out};
    write_manifest(manifest, m, t0);
    std::cout << "Z=" << format_number(report.value.Z) << " F_path=" << format_number(report.value.F_path)
              << " F_arrival=" << format_number(report.value.F_arrival)
              << " F_queue=" << format_number(report.value.F_queue) << "\n";
    return 0;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text, std::size_t max) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument(text);
        const std::size_t a = std::stoul(text.substr(0, colon)), b = std::stoul(text.substr(colon + 1));
        if (a > b || b > max) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw InputError("--sweep expects FROM:TO with FROM <= TO <= " + std::to_string(max));
    }
}

SolverConfig make_config(std::size_t population, std::size_t generations, std::size_t threads, std::size_t budget) {
    SolverConfig c;
    c.population = population;
    c.generations = generations;
    c.threads = threads;
    c.brute_budget = budget;
    return c;
}

int cmd_optimize(const OptimizeOptions& o) {
    const auto t0 = Clock::now();
    if (!is_solver_name(o.solver)) throw InputError("unknown solver '" + o.solver + "'");
    if (o.seeds == 0) throw InputError("--seeds must be positive");
    const Scenario sc = read_scenario(o.scenario);
    const Objective objective(sc, ObjectiveWeights::parse(o.weights));
    const std::size_t sites = objective.sites();

    std::size_t from = o.nuav, to = o.nuav;
    if (!o.sweep.empty()) std::tie(from, to) = parse_range(o.sweep, sites);
    if (to > sites) throw InputError("--nuav exceeds the " + std::to_string(sites) + " available sites");

    SolverConfig base = make_config(o.population, o.generations, o.threads, o.budget);
    base.mutation_width = o.mutation_width;
    fs::create_directories(o.out_dir);
    const std::string manifest_name = "optimize.manifest.json";
    RunManifest m;
    m.command = "optimize";
    m.inputs = {o.scenario};

    std::vector<SolveResult> all;
    std::vector<double> curve;  // best Z over seeds per fleet size
    std::vector<Deployment> incumbent(o.seeds);
    for (std::size_t n = from; n <= to; ++n) {
        double best_z = 0.0;
        for (std::size_t k = 0; k < o.seeds; ++k) {
            SolverConfig c = base;
            c.fleet = n;
            c.seed = o.seed + k;
            m.seeds.push_back(c.seed);
            Deployment prev;
            const Deployment* inc = nullptr;
            if (!o.sweep.empty() && n > from) {
                prev = Deployment(incumbent[k].bits(), n);
                inc = &prev;
            }
            SolveResult r = run_solver(o.solver, objective, c, inc);
            incumbent[k] = r.best;
            const std::string trace = o.solver + "_n" + std::to_string(n) + "_s" + std::to_string(c.seed) + ".csv";
            write_file_atomic((fs::path(o.out_dir) / trace).string(), trace_csv(r, manifest_name));
            m.outputs.push_back(trace);
            if (k == 0 || r.value.Z < best_z) best_z = r.value.Z;
            std::cout << o.solver << " nuav=" << n << " seed=" << c.seed << " Z=" << format_number(r.value.Z)
                      << " deployment=" << r.best.to_string() << (r.exact ? " exact" : "") << "\n";
            all.push_back(std::move(r));
        }
        curve.push_back(best_z);
    }
    write_file_atomic((fs::path(o.out_dir) / "results.csv").string(), results_csv(all, manifest_name));
    m.outputs.push_back("results.csv");

    if (!o.sweep.empty()) {
        const MarginalReport mr = marginal_uncertainty(curve);
        std::string csv = "# manifest=" + manifest_name + "\nnuav,best_Z,decrease\n";
        for (std::size_t i = 0; i < curve.size(); ++i) {
            csv += std::to_string(from + i) + "," + format_number(curve[i]) + "," +
                   (i < mr.decreases.size() ? format_number(mr.decreases[i]) : std::string()) + "\n";
        }
        csv += "# knee=" + std::to_string(from + mr.knee) + "\n";
        write_file_atomic((fs::path(o.out_dir) / "sweep.csv").string(), csv);
        m.outputs.push_back("sweep.csv");
        if (!mr.warning.empty()) std::cerr << "warning: " << mr.warning << "\n";
        std::cout << "knee at nuav=" << from + mr.knee << "\n";
    }
    m.config = {{"solver", o.solver}, {"nuav", o.nuav}, {"sweep", o.sweep}, {"population", o.population},
                {"generations", o.generations}, {"mutation_width", o.mutation_width}, {"budget", o.budget},
                {"weights", o.weights}, {"seeds", o.seeds}};
    write_manifest((fs::path(o.out_dir) / manifest_name).string(), m, t0);
    return 0;
}

int cmd_compare(const CompareOptions& o) {
    const auto t0 = Clock::now();
    if (o.solvers.size() < 2) throw InputError("--solvers needs at least two entries");
    for (const auto& s : o.solvers) {
        if (!is_solver_name(s)) throw InputError("unknown solver '" + s + "'");
    }
    const Scenario sc = read_scenario(o.scenario);
    const Objective objective(sc, ObjectiveWeights::parse(o.weights));
    if (o.nuav > objective.sites()) throw InputError("--nuav exceeds the available sites");

    std::vector<std::vector<SolveResult>> runs;
    std::vector<SolveResult> detail;
    RunManifest m;
    m.command = "compare";
    m.inputs = {o.scenario};
    for (std::size_t k = 0; k < o.seeds; ++k) m.seeds.push_back(o.seed + k);
    for (const auto& name : o.solvers) {
        std::vector<SolveResult> group;
        for (std::size_t k = 0; k < o.seeds; ++k) {
            SolverConfig c = make_config(o.population, o.generations, o.threads, o.budget);
            c.fleet = o.nuav;
            c.seed = o.seed + k;
            group.push_back(run_solver(name, objective, c));
            detail.push_back(group.back());
        }
        runs.push_back(std::move(group));
    }
    const auto rows = compare_runs(objective, runs);
    const std::string manifest_name = "compare.manifest.json";
    fs::create_directories(o.out_dir);
    write_file_atomic((fs::path(o.out_dir) / "comparison.csv").string(), comparison_csv(rows, manifest_name));
    write_file_atomic((fs::path(o.out_dir) / "comparison_detail.csv").string(), results_csv(detail, manifest_name));
    m.outputs = {"comparison.csv", "comparison_detail.csv"};
    m.config = {{"solvers", o.solvers}, {"nuav", o.nuav}, {"population", o.population},
                {"generations", o.generations}, {"weights", o.weights}};
    write_manifest((fs::path(o.out_dir) / manifest_name).string(), m, t0);
    for (const auto& r : rows) {
        std::cout << r.solver << ": mean Z=" << format_number(r.mean_best_Z)
                  << " convergence=" << format_number(r.mean_convergence)
                  << " population std=" << format_number(r.mean_population_std) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV placement under heterogeneous traffic sensing"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate a scenario file");
    g->add_option("--network", gen.network, "Preset name (shinan18, gridRxC, chainN) or scenario file");
    g->add_option("--out", gen.out, "Output scenario file");
    g->add_option("--penetration", gen.penetration, "Connected-vehicle penetration rate")->check(CLI::Range(0.0, 1.0));
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("--horizon", gen.horizon, "Simulation horizon in seconds");
    g->add_option("--demand-scale", gen.demand_scale, "Multiplier on every path demand")->check(CLI::PositiveNumber);
    g->add_option("--process", gen.process, "Arrival process: poisson or uniform");

    EvalOptions ev;
    auto* e = app.add_subcommand("eval", "Evaluate one deployment");
    e->add_option("--scenario", ev.scenario, "Scenario file")->required();
    e->add_option("--deploy", ev.deploy, "all, none, a site bit string, or comma-separated intersection ids");
    e->add_option("--nuav", ev.nuav, "Fleet limit (default: number of deployed UAVs)");
    e->add_option("--weights", ev.weights, "w1:w2:w3 or moum, soum-iu, soum-pu");
    e->add_option("--out", ev.out, "Output report file");

    OptimizeOptions op;
    auto* o = app.add_subcommand("optimize", "Optimise the deployment");
    o->add_option("--scenario", op.scenario, "Scenario file")->required();
    o->add_option("--solver", op.solver, "iqga, qga, ga, greedy-fcm or brute");
    o->add_option("--nuav", op.nuav, "Fleet size");
    o->add_option("--sweep", op.sweep, "Fleet size range FROM:TO");
    o->add_option("--seed", op.seed, "First seed");
    o->add_option("--seeds", op.seeds, "Number of consecutive seeds");
    o->add_option("--population", op.population, "Population size");
    o->add_option("--generations", op.generations, "Generations");
    o->add_option("--mutation-width", op.mutation_width, "Qubits flipped when a duplicate is found");
    o->add_option("--threads", op.threads, "Evaluation threads (0 = all cores)");
    o->add_option("--budget", op.budget, "Candidate limit for brute force");
    o->add_option("--weights", op.weights, "w1:w2:w3 or moum, soum-iu, soum-pu");
    o->add_option("--out-dir", op.out_dir, "Output directory");

    CompareOptions cp;
    auto* c = app.add_subcommand("compare", "Compare solvers over seeds");
    c->add_option("--scenario", cp.scenario, "Scenario file")->required();
    c->add_option("--solvers", cp.solvers, "Comma-separated solver names")->delimiter(',')->required();
    c->add_option("--nuav", cp.nuav, "Fleet size");
    c->add_option("--seed", cp.seed, "First seed");
    c->add_option("--seeds", cp.seeds, "Number of consecutive seeds");
    c->add_option("--population", cp.population, "Population size");
    c->add_option("--generations", cp.generations, "Generations");
    c->add_option("--threads", cp.threads, "Evaluation threads (0 = all cores)");
    c->add_option("--budget", cp.budget, "Candidate limit for brute force");
    c->add_option("--weights", cp.weights, "w1:w2:w3 or moum, soum-iu, soum-pu");
    c->add_option("--out-dir", cp.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*e) return cmd_eval(ev);
        if (*o) return cmd_optimize(op);
        if (*c) return cmd_compare(cp);
    } catch (const InputError& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 2;
    } catch (const DegenerateInput& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 2;
    } catch (const json::exception& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 2;
    } catch (const InfeasibleError& err) {
        std::cerr << "infeasible: " << err.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& err) {
        std::cerr << "over budget: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 4;
    }
    return 0;
}
