#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "uavloc/network.hpp"
#include "uavloc/presets.hpp"
#include "uavloc/queue_uncertainty.hpp"
#include "uavloc/scenario.hpp"

namespace testutil {

using namespace uavloc;

/// Straight arterial W -> 1 -> 2 -> ... -> n -> E with one through movement per site
/// and a single path. Movement k lives at intersection k+1.
inline ScenarioInputs line_inputs(int n, double link_length = 300.0, double vph = 0.0) {
    ScenarioInputs in;
    NetworkDescription& d = in.network;
    d.intersections.push_back({"W", IntersectionKind::boundary, {-link_length, 0.0}});
    for (int k = 1; k <= n; ++k) {
        d.intersections.push_back({std::to_string(k), IntersectionKind::t_junction, {(k - 1) * link_length, 0.0}});
    }
    d.intersections.push_back({"E", IntersectionKind::boundary, {n * link_length, 0.0}});
    std::vector<std::string> nodes{"W"};
    for (int k = 1; k <= n; ++k) nodes.push_back(std::to_string(k));
    nodes.push_back("E");
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        d.links.push_back({nodes[k] + "-" + nodes[k + 1], nodes[k], nodes[k + 1], link_length, 1});
    }
    Path path{"W~E", d.links.front().id, d.links.back().id, {}};
    for (int k = 1; k <= n; ++k) {
        Movement m;
        m.id = d.links[k - 1].id + ">" + d.links[k].id;
        m.intersection = std::to_string(k);
        m.inbound_link = d.links[k - 1].id;
        m.turn = Turn::through;
        m.outbound_link = d.links[k].id;
        d.movements.push_back(m);
        path.movement_sequence.push_back(m.id);
        in.signals.movements.push_back({90.0, 45.0, 0.0});
    }
    d.paths.push_back(path);
    in.flow.path_demand_vph = {vph};
    in.signals.horizon = 900.0;
    return in;
}

/// Shoelace area of a simple polygon.
inline double shoelace(const std::vector<PointTD>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const PointTD& p = v[i];
        const PointTD& q = v[(i + 1) % v.size()];
        a += p.t * q.d - q.t * p.d;
    }
    return std::abs(a) / 2.0;
}

/// Intersection of line p1 + s (p2 - p1) with line p3 + u (p4 - p3) by Cramer's rule.
inline PointTD line_intersection(PointTD p1, PointTD p2, PointTD p3, PointTD p4) {
    const double a1 = p2.t - p1.t, b1 = p3.t - p4.t, c1 = p3.t - p1.t;
    const double a2 = p2.d - p1.d, b2 = p3.d - p4.d, c2 = p3.d - p1.d;
    const double s = (c1 * b2 - c2 * b1) / (a1 * b2 - a2 * b1);
    return {p1.t + s * a1, p1.d + s * a2};
}

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testutil
