#include "uavloc/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "uavloc/errors.hpp"
#include "uavloc/observability.hpp"
#include "uavloc/path_uncertainty.hpp"

namespace uavloc {

using nlohmann::json;

namespace {

template <class T>
T field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(where + ": field '" + key + "' has the wrong type");
    }
}

template <class T>
T field_or(const json& obj, const char* key, T fallback, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    return field<T>(obj, key, where);
}

const json& section(const json& doc, const char* key, json::value_t type) {
    if (!doc.contains(key) || doc.at(key).type() != type) {
        throw InputError(std::string("scenario: missing or malformed section '") + key + "'");
    }
    return doc.at(key);
}

const char* process_name(ArrivalProcess p) { return p == ArrivalProcess::poisson ? "poisson" : "uniform"; }

ArrivalProcess process_from(const std::string& s) {
    if (s == "poisson") return ArrivalProcess::poisson;
    if (s == "uniform") return ArrivalProcess::uniform;
    throw InputError("flows: unknown arrival process '" + s + "'");
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json scenario_to_json(const Scenario& sc) {
    const ScenarioInputs& in = sc.inputs;
    const Network& net = sc.network;
    json doc;
    doc["schema"] = kScenarioSchema;
    doc["inputs"] = {{"penetration", in.penetration},
                     {"seed", in.seed},
                     {"uav_half_extent", in.uav_half_extent},
                     {"bin_width", in.bin_width}};

    json nodes = json::array(), links = json::array(), moves = json::array(), paths = json::array();
    for (const auto& n : net.intersections()) {
        nodes.push_back({{"id", n.id}, {"kind", to_string(n.kind)}, {"x", n.position.x}, {"y", n.position.y}});
    }
    for (const auto& l : net.links()) {
        links.push_back({{"id", l.id}, {"from", l.from_intersection}, {"to", l.to_intersection}, {"length", l.length},
                         {"lanes", l.lane_count}});
    }
    for (const auto& m : net.movements()) {
        json j = {{"id", m.id}, {"intersection", m.intersection}, {"inbound", m.inbound_link}, {"turn", to_string(m.turn)}};
        if (m.outbound_link) j["outbound"] = *m.outbound_link;
        moves.push_back(j);
    }
    for (const auto& p : net.paths()) {
        paths.push_back({{"id", p.id}, {"origin", p.origin_link}, {"destination", p.destination_link},
                         {"movements", p.movement_sequence}});
    }
    doc["network"] = {{"intersections", nodes}, {"links", links}, {"movements", moves}, {"paths", paths}};

    json sig = json::array();
    for (std::size_t m = 0; m < in.signals.movements.size(); ++m) {
        const auto& s = in.signals.movements[m];
        sig.push_back({{"movement", net.movements()[m].id}, {"cycle", s.cycle}, {"red", s.red}, {"offset", s.offset}});
    }
    doc["signals"] = {{"horizon", in.signals.horizon}, {"movements", sig}};

    const FlowModel& f = in.flow;
    json demand = json::array();
    for (std::size_t p = 0; p < f.path_demand_vph.size(); ++p) {
        demand.push_back({{"path", net.paths()[p].id}, {"vph", f.path_demand_vph[p]}});
    }
    doc["flows"] = {{"process", process_name(f.process)},
                    {"saturation_headway", f.saturation_headway},
                    {"w_a", f.w_a},
                    {"w_d", f.w_d},
                    {"lambda_u", f.lambda_u},
                    {"free_flow_speed", f.free_flow_speed},
                    {"paths", demand}};

    json loops = json::array();
    for (const auto& l : in.loops) loops.push_back({{"link", l.link}, {"position", l.position}});
    doc["loops"] = loops;

    json veh = json::array();
    for (const auto& v : sc.vehicles) {
        json arr = json::array(), dep = json::array();
        for (const auto& p : v.passes) {
            arr.push_back(p.arrival);
            dep.push_back(p.departure);
        }
        veh.push_back({{"id", v.id},
                       {"path", net.paths()[v.path].id},
                       {"cv", v.is_cv},
                       {"release", v.release},
                       {"arrival", arr},
                       {"departure", dep}});
    }
    doc["vehicles"] = veh;
    return doc;
}

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) throw InputError("scenario: document is not a JSON object");
    const std::string schema = field_or<std::string>(doc, "schema", "", "scenario");
    if (schema != kScenarioSchema) throw InputError("scenario: unsupported schema '" + schema + "'");

    ScenarioInputs in;
    const json& inputs = section(doc, "inputs", json::value_t::object);
    in.penetration = field<double>(inputs, "penetration", "inputs");
    in.seed = field<std::uint64_t>(inputs, "seed", "inputs");
    in.uav_half_extent = field_or<double>(inputs, "uav_half_extent", in.uav_half_extent, "inputs");
    in.bin_width = field_or<double>(inputs, "bin_width", in.bin_width, "inputs");

    const json& network = section(doc, "network", json::value_t::object);
    NetworkDescription& d = in.network;
    for (const json& n : section(network, "intersections", json::value_t::array)) {
        Intersection x;
        x.id = field<std::string>(n, "id", "intersection");
        x.kind = intersection_kind_from_string(field<std::string>(n, "kind", "intersection " + x.id));
        x.position = {field_or<double>(n, "x", 0.0, x.id), field_or<double>(n, "y", 0.0, x.id)};
        d.intersections.push_back(x);
    }
    for (const json& l : section(network, "links", json::value_t::array)) {
        Link x;
        x.id = field<std::string>(l, "id", "link");
        x.from_intersection = field<std::string>(l, "from", "link " + x.id);
        x.to_intersection = field<std::string>(l, "to", "link " + x.id);
        x.length = field<double>(l, "length", "link " + x.id);
        x.lane_count = field_or<int>(l, "lanes", 1, "link " + x.id);
        d.links.push_back(x);
    }
    for (const json& m : section(network, "movements", json::value_t::array)) {
        Movement x;
        x.id = field<std::string>(m, "id", "movement");
        x.intersection = field<std::string>(m, "intersection", "movement " + x.id);
        x.inbound_link = field<std::string>(m, "inbound", "movement " + x.id);
        x.turn = turn_from_string(field<std::string>(m, "turn", "movement " + x.id));
        if (m.contains("outbound")) x.outbound_link = field<std::string>(m, "outbound", "movement " + x.id);
        d.movements.push_back(x);
    }
    for (const json& p : section(network, "paths", json::value_t::array)) {
        Path x;
        x.id = field<std::string>(p, "id", "path");
        x.origin_link = field<std::string>(p, "origin", "path " + x.id);
        x.destination_link = field<std::string>(p, "destination", "path " + x.id);
        x.movement_sequence = field<std::vector<std::string>>(p, "movements", "path " + x.id);
        d.paths.push_back(x);
    }
    const Network net(d);
    const ValidationReport report = net.validate();
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw InputError("network: " + v.entity + ": " + v.message);
    }

    const json& signals = section(doc, "signals", json::value_t::object);
    in.signals.horizon = field<double>(signals, "horizon", "signals");
    in.signals.movements.assign(d.movements.size(), {});
    std::vector<bool> seen(d.movements.size(), false);
    for (const json& s : section(signals, "movements", json::value_t::array)) {
        const std::size_t m = net.movement_index(field<std::string>(s, "movement", "signal"));
        in.signals.movements[m] = {field<double>(s, "cycle", "signal"), field<double>(s, "red", "signal"),
                                   field<double>(s, "offset", "signal")};
        seen[m] = true;
    }
    for (std::size_t m = 0; m < seen.size(); ++m) {
        if (!seen[m]) throw InputError("signals: movement '" + d.movements[m].id + "' has no timing");
    }

    const json& flows = section(doc, "flows", json::value_t::object);
    FlowModel& f = in.flow;
    f.process = process_from(field<std::string>(flows, "process", "flows"));
    f.saturation_headway = field<double>(flows, "saturation_headway", "flows");
    f.w_a = field<double>(flows, "w_a", "flows");
    f.w_d = field<double>(flows, "w_d", "flows");
    f.lambda_u = field<double>(flows, "lambda_u", "flows");
    f.free_flow_speed = field<double>(flows, "free_flow_speed", "flows");
    f.path_demand_vph.assign(d.paths.size(), 0.0);
    for (const json& p : section(flows, "paths", json::value_t::array)) {
        f.path_demand_vph[net.path_index(field<std::string>(p, "path", "flows"))] = field<double>(p, "vph", "flows");
    }

    for (const json& l : section(doc, "loops", json::value_t::array)) {
        in.loops.push_back({field<std::string>(l, "link", "loop"), field<double>(l, "position", "loop")});
    }

    std::vector<VehicleRecord> vehicles;
    for (const json& v : section(doc, "vehicles", json::value_t::array)) {
        VehicleRecord r;
        r.id = field<std::size_t>(v, "id", "vehicle");
        const std::string where = "vehicle " + std::to_string(r.id);
        r.path = net.path_index(field<std::string>(v, "path", where));
        r.is_cv = field<bool>(v, "cv", where);
        r.release = field<double>(v, "release", where);
        const auto arr = field<std::vector<double>>(v, "arrival", where);
        const auto dep = field<std::vector<double>>(v, "departure", where);
        if (arr.size() != dep.size()) throw InputError(where + ": arrival and departure lengths differ");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            MovementPass p;
            p.arrival = arr[k];
            p.departure = dep[k];
            r.passes.push_back(p);
        }
        vehicles.push_back(std::move(r));
    }
    return assemble_scenario(std::move(in), std::move(vehicles));
}

void write_scenario(const std::string& path, const Scenario& scenario, const std::string& manifest_name) {
    json doc = scenario_to_json(scenario);
    if (!manifest_name.empty()) doc["manifest"] = manifest_name;
    write_file_atomic(path, doc.dump(1) + "\n");
}

Scenario read_scenario(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return scenario_from_json(doc);
}

EvalReport make_eval_report(const Objective& objective, const Deployment& u) {
    const Network& net = objective.network();
    EvalReport r;
    r.deployment = u.to_string();
    r.fleet = u.fleet_limit();
    r.weights = objective.weights();
    r.value = objective.evaluate(u);

    const MovementObservability obs = movement_observability(net, u);
    const PathUncertaintyReport pu = path_uncertainty(partition_paths(net, obs, objective.cv_flows()));
    for (std::size_t k = 0; k < net.paths().size(); ++k) {
        r.paths.push_back({net.paths()[k].id, to_string(pu.path_class[k]), pu.U[k]});
    }
    for (std::size_t m = 0; m < net.movements().size(); ++m) {
        MovementReport mr;
        mr.id = net.movements()[m].id;
        mr.case_label = obs.case_label[m];
        const auto& t = objective.table().movements[m];
        const auto& a = t.arrival[mr.case_label - 1];
        const auto& q = t.queue[mr.case_label - 1];
        for (std::size_t j = 0; j < a.size(); ++j) mr.cycles.push_back({static_cast<int>(j), a[j], q[j]});
        r.movements.push_back(std::move(mr));
    }
    return r;
}

json eval_report_to_json(const EvalReport& r) {
    json paths = json::array(), moves = json::array();
    for (const auto& p : r.paths) paths.push_back({{"id", p.id}, {"class", p.path_class}, {"U", p.U}});
    for (const auto& m : r.movements) {
        json cycles = json::array();
        for (const auto& c : m.cycles) {
            cycles.push_back({{"cycle", c.cycle}, {"U_arrival", c.U_arrival}, {"U_queue", c.U_queue}});
        }
        moves.push_back({{"id", m.id}, {"case", m.case_label}, {"cycles", cycles}});
    }
    return {{"schema", kReportSchema},
            {"deployment", r.deployment},
            {"fleet", r.fleet},
            {"weights", r.weights.to_string()},
            {"F_path", r.value.F_path},
            {"F_arrival", r.value.F_arrival},
            {"F_queue", r.value.F_queue},
            {"Z", r.value.Z},
            {"paths", paths},
            {"movements", moves}};
}

EvalReport eval_report_from_json(const json& doc) {
    if (field_or<std::string>(doc, "schema", "", "report") != kReportSchema) {
        throw InputError("report: unsupported schema");
    }
    EvalReport r;
    r.deployment = field<std::string>(doc, "deployment", "report");
    r.fleet = field<std::size_t>(doc, "fleet", "report");
    r.weights = ObjectiveWeights::parse(field<std::string>(doc, "weights", "report"));
    r.value.F_path = field<double>(doc, "F_path", "report");
    r.value.F_arrival = field<double>(doc, "F_arrival", "report");
    r.value.F_queue = field<double>(doc, "F_queue", "report");
    r.value.Z = field<double>(doc, "Z", "report");
    for (const json& p : section(doc, "paths", json::value_t::array)) {
        r.paths.push_back({field<std::string>(p, "id", "path"), field<std::string>(p, "class", "path"),
                           field<double>(p, "U", "path")});
    }
    for (const json& m : section(doc, "movements", json::value_t::array)) {
        MovementReport mr;
        mr.id = field<std::string>(m, "id", "movement");
        mr.case_label = field<int>(m, "case", "movement " + mr.id);
        for (const json& c : section(m, "cycles", json::value_t::array)) {
            mr.cycles.push_back({field<int>(c, "cycle", mr.id), field<double>(c, "U_arrival", mr.id),
                                 field<double>(c, "U_queue", mr.id)});
        }
        r.movements.push_back(std::move(mr));
    }
    return r;
}

json manifest_to_json(const RunManifest& m) {
    return {{"command", m.command}, {"config", m.config},   {"seeds", m.seeds},
            {"inputs", m.inputs},   {"outputs", m.outputs}, {"version", m.version},
            {"wall_seconds", m.wall_seconds}};
}

void write_file_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trace_csv(const SolveResult& r, const std::string& manifest_name) {
    std::string out = "# manifest=" + manifest_name + "\n";
    out += "generation,best_so_far_Z,generation_best_Z,mean_fitness,std_fitness\n";
    for (std::size_t g = 0; g < r.trace.size(); ++g) {
        const auto& s = r.trace[g];
        out += std::to_string(g) + "," + format_number(-s.best_so_far) + "," + format_number(-s.generation_best) + "," +
               format_number(s.mean) + "," + format_number(s.stddev) + "\n";
    }
    return out;
}

std::string comparison_csv(const std::vector<SolverSummary>& rows, const std::string& manifest_name) {
    std::string out = "# manifest=" + manifest_name + "\n";
    out +=
        "solver,runs,mean_best_Z,std_best_Z,mean_convergence_gen,mean_first_optimum_gen,mean_population_std,"
        "mean_wall_seconds,time_difference,convergence_difference,flow_coverage,path_coverage\n";
    for (const auto& s : rows) {
        out += csv_escape(s.solver) + "," + std::to_string(s.runs) + "," + format_number(s.mean_best_Z) + "," +
               format_number(s.std_best_Z) + "," + format_number(s.mean_convergence) + "," +
               format_number(s.mean_first_optimum) + "," + format_number(s.mean_population_std) + "," +
               format_number(s.mean_wall_seconds) + "," + format_number(s.time_difference) + "," +
               format_number(s.convergence_difference) + "," + format_number(s.mean_flow_coverage) + "," +
               format_number(s.mean_path_coverage) + "\n";
    }
    return out;
}

std::string results_csv(const std::vector<SolveResult>& results, const std::string& manifest_name) {
    std::string out = "# manifest=" + manifest_name + "\n";
    out +=
        "solver,seed,nuav,Z,F_path,F_arrival,F_queue,deployment,exact,convergence_gen,first_optimum_gen,"
        "population_std,evaluations,wall_seconds\n";
    for (const auto& r : results) {
        out += csv_escape(r.solver) + "," + std::to_string(r.seed) + "," + std::to_string(r.fleet) + "," +
               format_number(r.value.Z) + "," + format_number(r.value.F_path) + "," +
               format_number(r.value.F_arrival) + "," + format_number(r.value.F_queue) + "," + r.best.to_string() +
               "," + (r.exact ? "true" : "false") + "," + std::to_string(r.convergence_generation) + "," +
               std::to_string(r.first_optimum_generation) + "," + format_number(r.mean_population_std()) + "," +
               std::to_string(r.evaluations) + "," + format_number(r.wall_seconds) + "\n";
    }
    return out;
}

}  // namespace uavloc
