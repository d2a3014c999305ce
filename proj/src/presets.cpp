#include "uavloc/presets.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <regex>

#include "uavloc/errors.hpp"

namespace uavloc {

namespace {

struct Vec {
    int dx, dy;  // dy > 0 is north
};

Vec vec(Heading h) {
    switch (h) {
        case Heading::north: return {0, 1};
        case Heading::east: return {1, 0};
        case Heading::south: return {0, -1};
        case Heading::west: return {-1, 0};
    }
    return {0, 0};
}

Heading opposite(Heading h) {
    switch (h) {
        case Heading::north: return Heading::south;
        case Heading::east: return Heading::west;
        case Heading::south: return Heading::north;
        case Heading::west: return Heading::east;
    }
    return h;
}

const char* letter(Heading h) {
    switch (h) {
        case Heading::north: return "N";
        case Heading::east: return "E";
        case Heading::south: return "S";
        case Heading::west: return "W";
    }
    return "?";
}

// nullopt for a U-turn.
std::optional<Turn> classify_turn(Heading in, Heading out) {
    if (in == out) return Turn::through;
    if (out == opposite(in)) return std::nullopt;
    Vec a = vec(in), b = vec(out);
    return (a.dx * b.dy - a.dy * b.dx) > 0 ? Turn::left : Turn::right;
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct GridLink {
    std::string id;
    int from_node;  // -1 for boundary
    int to_node;
    Heading heading;  // travel direction
};

}  // namespace

ScenarioInputs build_grid(const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) throw InputError("grid needs at least one row and column");
    const int n = spec.rows * spec.cols;
    if (!spec.nodes.empty() && static_cast<int>(spec.nodes.size()) != n) {
        throw InputError("grid node spec count differs from rows*cols");
    }
    auto gap = [](const std::vector<double>& gaps, int k) { return gaps.empty() ? 300.0 : gaps.at(k); };

    std::vector<double> xs(spec.cols, 0.0), ys(spec.rows, 0.0);
    for (int c = 1; c < spec.cols; ++c) xs[c] = xs[c - 1] + gap(spec.column_gaps, c - 1);
    for (int r = 1; r < spec.rows; ++r) ys[r] = ys[r - 1] - gap(spec.row_gaps, r - 1);

    auto node_id = [](int k) { return std::to_string(k + 1); };
    auto neighbour = [&](int k, Heading h) -> int {
        int r = k / spec.cols, c = k % spec.cols;
        Vec v = vec(h);
        int r2 = r - v.dy, c2 = c + v.dx;
        if (r2 < 0 || r2 >= spec.rows || c2 < 0 || c2 >= spec.cols) return -1;
        return r2 * spec.cols + c2;
    };
    const Heading all_headings[] = {Heading::north, Heading::east, Heading::south, Heading::west};

    std::vector<std::vector<Heading>> legs(n);
    for (int k = 0; k < n; ++k) {
        if (spec.nodes.empty()) {
            for (Heading h : all_headings) {
                if (neighbour(k, h) < 0) legs[k].push_back(h);
            }
        } else {
            legs[k] = spec.nodes[k].boundary_legs;
            for (Heading h : legs[k]) {
                if (neighbour(k, h) >= 0) throw InputError("boundary leg points at an internal neighbour");
            }
        }
    }

    ScenarioInputs out;
    NetworkDescription& net = out.network;
    for (int k = 0; k < n; ++k) {
        int degree = static_cast<int>(legs[k].size());
        for (Heading h : all_headings) degree += neighbour(k, h) >= 0 ? 1 : 0;
        Intersection node;
        node.id = node_id(k);
        node.kind = degree >= 4 ? IntersectionKind::crossroad : IntersectionKind::t_junction;
        node.position = {xs[k % spec.cols], ys[k / spec.cols]};
        net.intersections.push_back(node);
    }

    std::vector<GridLink> glinks;
    // internal links, both directions
    for (int k = 0; k < n; ++k) {
        for (Heading h : all_headings) {
            int k2 = neighbour(k, h);
            if (k2 < 0) continue;
            GridLink gl{node_id(k) + "-" + node_id(k2), k, k2, h};
            glinks.push_back(gl);
            Link link{gl.id, node_id(k), node_id(k2), 0.0, 1};
            Point2 a = net.intersections[k].position, b = net.intersections[k2].position;
            link.length = std::hypot(a.x - b.x, a.y - b.y);
            net.links.push_back(link);
        }
    }
    // boundary legs: one entry and one exit link each
    std::vector<std::size_t> entry_links, exit_links;
    for (int k = 0; k < n; ++k) {
        for (Heading h : legs[k]) {
            std::string bid = "B" + node_id(k) + letter(h);
            Vec v = vec(h);
            Point2 p = net.intersections[k].position;
            net.intersections.push_back({bid, IntersectionKind::boundary,
                                         {p.x + v.dx * spec.boundary_length, p.y + v.dy * spec.boundary_length}});
            entry_links.push_back(glinks.size());
            glinks.push_back({bid + "-" + node_id(k), -1, k, opposite(h)});
            net.links.push_back({bid + "-" + node_id(k), bid, node_id(k), spec.boundary_length, 1});
            exit_links.push_back(glinks.size());
            glinks.push_back({node_id(k) + "-" + bid, k, -1, h});
            net.links.push_back({node_id(k) + "-" + bid, node_id(k), bid, spec.boundary_length, 1});
        }
    }

    // movements: every inbound x outbound pair at a node except U-turns
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> movement_of;
    for (int k = 0; k < n; ++k) {
        for (std::size_t li = 0; li < glinks.size(); ++li) {
            if (glinks[li].to_node != k) continue;
            for (std::size_t lo = 0; lo < glinks.size(); ++lo) {
                if (glinks[lo].from_node != k) continue;
                auto turn = classify_turn(glinks[li].heading, glinks[lo].heading);
                if (!turn) continue;
                Movement mv;
                mv.id = glinks[li].id + ">" + glinks[lo].id;
                mv.intersection = node_id(k);
                mv.inbound_link = glinks[li].id;
                mv.turn = *turn;
                mv.outbound_link = glinks[lo].id;
                movement_of[{li, lo}] = net.movements.size();
                net.movements.push_back(mv);
            }
        }
    }

    auto find_link = [&](int from, int to) -> std::size_t {
        for (std::size_t l = 0; l < glinks.size(); ++l) {
            if (glinks[l].from_node == from && glinks[l].to_node == to) return l;
        }
        return static_cast<std::size_t>(-1);
    };
    auto staircase = [&](int a, int b, bool horizontal_first) {
        std::vector<int> nodes{a};
        int r = a / spec.cols, c = a % spec.cols;
        const int rb = b / spec.cols, cb = b % spec.cols;
        auto step_cols = [&] { while (c != cb) { c += cb > c ? 1 : -1; nodes.push_back(r * spec.cols + c); } };
        auto step_rows = [&] { while (r != rb) { r += rb > r ? 1 : -1; nodes.push_back(r * spec.cols + c); } };
        if (horizontal_first) { step_cols(); step_rows(); } else { step_rows(); step_cols(); }
        return nodes;
    };

    std::mt19937_64 demand_rng(spec.demand_seed);
    for (std::size_t e : entry_links) {
        for (std::size_t x : exit_links) {
            const int a = glinks[e].to_node, b = glinks[x].from_node;
            std::vector<std::vector<int>> routes;
            for (bool hfirst : {true, false}) {
                auto nodes = staircase(a, b, hfirst);
                bool dup = false;
                for (const auto& r : routes) dup = dup || r == nodes;
                if (!dup && static_cast<int>(routes.size()) < spec.routes_per_od) routes.push_back(nodes);
            }
            int variant = 0;
            for (const auto& nodes : routes) {
                std::vector<std::size_t> seq_links{e};
                for (std::size_t q = 0; q + 1 < nodes.size(); ++q) seq_links.push_back(find_link(nodes[q], nodes[q + 1]));
                seq_links.push_back(x);
                Path path;
                path.id = glinks[e].id + "~" + glinks[x].id + "#" + std::to_string(variant);
                path.origin_link = glinks[e].id;
                path.destination_link = glinks[x].id;
                bool ok = true;
                for (std::size_t q = 0; q + 1 < seq_links.size() && ok; ++q) {
                    auto it = movement_of.find({seq_links[q], seq_links[q + 1]});
                    if (it == movement_of.end()) ok = false;  // U-turn
                    else path.movement_sequence.push_back(net.movements[it->second].id);
                }
                if (!ok) continue;
                ++variant;
                net.paths.push_back(path);
                out.flow.path_demand_vph.push_back(spec.mean_path_demand_vph * (0.5 + unit_draw(demand_rng)));
            }
        }
    }

    const double cycle = 90.0, red = 45.0;
    for (const Movement& mv : net.movements) {
        std::size_t li = 0;
        while (glinks[li].id != mv.inbound_link) ++li;
        const int k = std::stoi(mv.intersection) - 1;
        double offset = std::fmod(23.0 * k, cycle);
        Heading h = glinks[li].heading;
        if (h == Heading::north || h == Heading::south) offset = std::fmod(offset + cycle / 2.0, cycle);
        out.signals.movements.push_back({cycle, red, offset});
    }
    out.signals.horizon = 3600.0;

    for (int row : spec.loop_rows) {
        for (const GridLink& gl : glinks) {
            if (gl.from_node < 0 || gl.to_node < 0) continue;
            if (gl.from_node / spec.cols != row || gl.to_node / spec.cols != row) continue;
            out.loops.push_back({gl.id, spec.loop_position});
        }
    }
    return out;
}

ScenarioInputs preset_grid(int rows, int cols) {
    GridSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    if (rows >= 3) spec.loop_rows = {rows / 2};
    return build_grid(spec);
}

ScenarioInputs preset_shinan18() {
    GridSpec spec;
    spec.rows = 3;
    spec.cols = 6;
    spec.column_gaps = {300.0, 350.0, 250.0, 400.0, 320.0};
    spec.row_gaps = {280.0, 360.0};
    spec.nodes.resize(18);
    for (int c = 0; c < 6; ++c) {
        spec.nodes[c].boundary_legs = {Heading::north};
        spec.nodes[12 + c].boundary_legs = {Heading::south};
    }
    spec.nodes[6].boundary_legs = {Heading::west};
    spec.nodes[11].boundary_legs = {Heading::east};
    spec.loop_rows = {1};
    spec.mean_path_demand_vph = 8.0;
    return build_grid(spec);
}

bool is_preset_name(const std::string& name) {
    static const std::regex re("shinan18|grid[1-9][0-9]*x[1-9][0-9]*|chain[1-9][0-9]*");
    return std::regex_match(name, re);
}

ScenarioInputs make_preset(const std::string& name) {
    if (name == "shinan18") return preset_shinan18();
    std::smatch m;
    static const std::regex grid("grid([1-9][0-9]*)x([1-9][0-9]*)");
    static const std::regex chain("chain([1-9][0-9]*)");
    if (std::regex_match(name, m, grid)) return preset_grid(std::stoi(m[1]), std::stoi(m[2]));
    if (std::regex_match(name, m, chain)) return preset_grid(1, std::stoi(m[1]));
    throw InputError("unknown network preset '" + name + "'");
}

}  // namespace uavloc
