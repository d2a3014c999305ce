#include "uavloc/path_uncertainty.hpp"

#include "uavloc/errors.hpp"

namespace uavloc {

std::vector<double> cv_path_flows(const Scenario& scenario) {
    std::vector<double> f(scenario.network.paths().size(), 0.0);
    for (const VehicleRecord& v : scenario.vehicles) {
        if (v.is_cv) f[v.path] += 1.0;
    }
    return f;
}

PathUncertaintyReport path_uncertainty(const PathPartition& part) {
    PathUncertaintyReport rep;
    const std::size_t n = part.path_class.size();
    rep.path_class = part.path_class;
    rep.U.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double u = 0.0;
        switch (part.path_class[k]) {
            case PathClass::observed_cv: {
                const double f_o = part.groups[part.group_of[k]].f_o;
                if (!(f_o > 0.0) || !(part.Q_o > 0.0)) {
                    throw DegenerateInput("observed CV path " + std::to_string(k) + " has zero group or total CV flow");
                }
                u = (f_o / part.Q_o) * (1.0 - part.f[k] / f_o);
                break;
            }
            case PathClass::observed_only: {
                const double n_o = static_cast<double>(part.groups[part.group_of[k]].paths.size());
                u = 1.0 - 1.0 / n_o;
                break;
            }
            case PathClass::cv_only:
                if (!(part.f_cv > 0.0)) throw DegenerateInput("CV-only path " + std::to_string(k) + " with zero f_cv");
                u = 1.0 - part.f[k] / part.f_cv;
                break;
            case PathClass::unobserved:
                if (part.n_non == 0) throw DegenerateInput("unobserved path with empty unobserved set");
                u = 1.0 - 1.0 / static_cast<double>(part.n_non);
                break;
        }
        rep.U[k] = u;
        rep.F_path += u;
    }
    return rep;
}

}  // namespace uavloc
