#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavloc/network.hpp"

namespace uavloc {

/// Binary UAV placement over the network's sites (non-boundary intersections).
class Deployment {
public:
    Deployment() = default;
    /// Throws InputError when more than `fleet_limit` bits are set.
    Deployment(std::vector<std::uint8_t> bits, std::size_t fleet_limit);

    static Deployment none(std::size_t sites, std::size_t fleet_limit = 0);
    static Deployment all(std::size_t sites);
    static Deployment from_sites(std::size_t sites, const std::vector<std::size_t>& on, std::size_t fleet_limit);

    std::size_t size() const { return bits_.size(); }
    bool operator[](std::size_t site) const { return bits_[site] != 0; }
    std::size_t count() const;
    std::size_t fleet_limit() const { return fleet_limit_; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::string to_string() const;  // e.g. "010011"

    bool operator==(const Deployment& o) const { return bits_ == o.bits_; }

private:
    std::vector<std::uint8_t> bits_;
    std::size_t fleet_limit_ = 0;
};

/// u for an intersection; boundary nodes never host a UAV.
bool hosts_uav(const Network& network, const Deployment& u, std::size_t intersection);

/// Case 1: u_i = u_i' = 1; 2: only u_i; 3: only u_i'; 4: neither.
int observability_case(bool u_i, bool u_upstream);

struct MovementObservability {
    std::vector<std::uint8_t> y;  // per movement
    std::vector<int> case_label;  // per movement, 1..4
};

MovementObservability movement_observability(const Network& network, const Deployment& u);

std::vector<std::size_t> observed_subpath(const Network& network, std::size_t path, const MovementObservability& obs);

enum class PathClass { observed_cv, observed_only, cv_only, unobserved };
const char* to_string(PathClass c);

struct ObservedGroup {
    std::vector<std::size_t> signature;  // observed movement indices
    std::vector<std::size_t> paths;
    double f_o = 0.0;  // CVs whose path is in the group
};

struct PathPartition {
    std::vector<PathClass> path_class;
    std::vector<std::size_t> group_of;  // npos when unobserved
    std::vector<ObservedGroup> groups;
    std::vector<double> f;  // CV count per path
    std::vector<std::size_t> K_o_cv, K_o_only, K_cv_only, K_unobserved;
    double f_cv = 0.0;  // CVs on paths outside every observed group
    double Q_o = 0.0;   // CVs over all observed groups
    std::size_t n_non = 0;
};

PathPartition partition_paths(const Network& network, const MovementObservability& obs,
                              const std::vector<double>& cv_path_flows);

}  // namespace uavloc
