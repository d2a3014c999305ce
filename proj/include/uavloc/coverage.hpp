#pragma once

#include "uavloc/observability.hpp"
#include "uavloc/scenario.hpp"

namespace uavloc {

struct CoverageReport {
    double link_flow_covered = 0.0;  // FCM objective: flow on links with a UAV at either end
    double link_flow_total = 0.0;
    double movement_flow_observed = 0.0;  // UAV or loop movements, plus CVs elsewhere
    double movement_flow_total = 0.0;
    std::size_t paths_observed = 0;  // paths seen by a UAV, a loop, or at least one CV
    std::size_t path_count = 0;

    double link_coverage() const { return link_flow_total > 0.0 ? link_flow_covered / link_flow_total : 0.0; }
    double flow_coverage() const { return movement_flow_total > 0.0 ? movement_flow_observed / movement_flow_total : 0.0; }
    double path_coverage() const { return path_count ? double(paths_observed) / double(path_count) : 0.0; }
};

/// Link a is covered when either endpoint intersection hosts a UAV.
double covered_link_flow(const Scenario& scenario, const Deployment& u);

CoverageReport coverage(const Scenario& scenario, const Deployment& u);

}  // namespace uavloc
