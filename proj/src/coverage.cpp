#include "uavloc/coverage.hpp"

namespace uavloc {

double covered_link_flow(const Scenario& sc, const Deployment& u) {
    const Network& net = sc.network;
    double total = 0.0;
    for (std::size_t l = 0; l < net.links().size(); ++l) {
        if (hosts_uav(net, u, net.link_from(l)) || hosts_uav(net, u, net.link_to(l))) total += sc.truth.link_flow[l];
    }
    return total;
}

CoverageReport coverage(const Scenario& sc, const Deployment& u) {
    const Network& net = sc.network;
    const MovementObservability obs = movement_observability(net, u);
    CoverageReport rep;
    rep.link_flow_covered = covered_link_flow(sc, u);
    for (double v : sc.truth.link_flow) rep.link_flow_total += v;

    std::vector<bool> has_loop(net.links().size(), false);
    for (const LoopDetector& d : sc.inputs.loops) has_loop[net.link_index(d.link)] = true;

    std::vector<double> cv_on_movement(net.movements().size(), 0.0), flow(net.movements().size(), 0.0);
    std::vector<bool> path_has_cv(net.paths().size(), false);
    for (const VehicleRecord& v : sc.vehicles) {
        if (v.is_cv) path_has_cv[v.path] = true;
        for (const MovementPass& p : v.passes) {
            flow[p.movement] += 1.0;
            if (v.is_cv) cv_on_movement[p.movement] += 1.0;
        }
    }
    std::vector<bool> movement_seen(net.movements().size(), false);
    for (std::size_t m = 0; m < net.movements().size(); ++m) {
        movement_seen[m] = obs.y[m] || has_loop[net.movement_inbound(m)];
        rep.movement_flow_total += flow[m];
        rep.movement_flow_observed += movement_seen[m] ? flow[m] : cv_on_movement[m];
    }

    rep.path_count = net.paths().size();
    for (std::size_t k = 0; k < net.paths().size(); ++k) {
        bool seen = path_has_cv[k];
        for (std::size_t m : net.path_movements(k)) seen = seen || movement_seen[m];
        if (seen) ++rep.paths_observed;
    }
    return rep;
}

}  // namespace uavloc
