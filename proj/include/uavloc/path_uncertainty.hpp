#pragma once

#include <vector>

#include "uavloc/observability.hpp"
#include "uavloc/scenario.hpp"

namespace uavloc {

struct PathUncertaintyReport {
    std::vector<PathClass> path_class;
    std::vector<double> U;  // per path, in [0, 1)
    double F_path = 0.0;
};

/// CV count per path over the whole horizon.
std::vector<double> cv_path_flows(const Scenario& scenario);

/// Throws DegenerateInput when a case formula would divide by zero.
PathUncertaintyReport path_uncertainty(const PathPartition& partition);

}  // namespace uavloc
