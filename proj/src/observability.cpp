#include "uavloc/observability.hpp"

#include <algorithm>
#include <map>

#include "uavloc/errors.hpp"

namespace uavloc {

Deployment::Deployment(std::vector<std::uint8_t> bits, std::size_t fleet_limit)
    : bits_(std::move(bits)), fleet_limit_(fleet_limit) {
    for (auto& b : bits_) b = b ? 1 : 0;
    if (count() > fleet_limit_) {
        throw InputError("deployment uses " + std::to_string(count()) + " UAVs but the fleet limit is " +
                         std::to_string(fleet_limit_));
    }
}

Deployment Deployment::none(std::size_t sites, std::size_t fleet_limit) {
    return Deployment(std::vector<std::uint8_t>(sites, 0), fleet_limit);
}

Deployment Deployment::all(std::size_t sites) { return Deployment(std::vector<std::uint8_t>(sites, 1), sites); }

Deployment Deployment::from_sites(std::size_t sites, const std::vector<std::size_t>& on, std::size_t fleet_limit) {
    std::vector<std::uint8_t> bits(sites, 0);
    for (std::size_t s : on) {
        if (s >= sites) throw InputError("site index " + std::to_string(s) + " out of range");
        bits[s] = 1;
    }
    return Deployment(std::move(bits), fleet_limit);
}

std::size_t Deployment::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string Deployment::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

bool hosts_uav(const Network& network, const Deployment& u, std::size_t intersection) {
    if (intersection == Network::npos) return false;
    std::size_t site = network.site_of(intersection);
    return site != Network::npos && u[site];
}

int observability_case(bool u_i, bool u_upstream) {
    if (u_i) return u_upstream ? 1 : 2;
    return u_upstream ? 3 : 4;
}

MovementObservability movement_observability(const Network& network, const Deployment& u) {
    if (u.size() != network.site_count()) {
        throw InputError("deployment has " + std::to_string(u.size()) + " bits, network has " +
                         std::to_string(network.site_count()) + " sites");
    }
    const std::size_t n = network.movements().size();
    MovementObservability obs;
    obs.y.resize(n);
    obs.case_label.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        bool ui = hosts_uav(network, u, network.movement_intersection(m));
        bool up = hosts_uav(network, u, network.movement_upstream(m));
        obs.y[m] = (ui || up) ? 1 : 0;
        obs.case_label[m] = observability_case(ui, up);
    }
    return obs;
}

std::vector<std::size_t> observed_subpath(const Network& network, std::size_t path, const MovementObservability& obs) {
    std::vector<std::size_t> out;
    for (std::size_t m : network.path_movements(path)) {
        if (obs.y[m]) out.push_back(m);
    }
    return out;
}

const char* to_string(PathClass c) {
    switch (c) {
        case PathClass::observed_cv: return "o_cv";
        case PathClass::observed_only: return "o_only";
        case PathClass::cv_only: return "cv_only";
        case PathClass::unobserved: return "unobserved";
    }
    return "?";
}

PathPartition partition_paths(const Network& network, const MovementObservability& obs,
                              const std::vector<double>& cv_path_flows) {
    const std::size_t n = network.paths().size();
    if (cv_path_flows.size() != n) throw InputError("CV path flow vector size differs from path count");
    PathPartition part;
    part.f = cv_path_flows;
    part.path_class.resize(n);
    part.group_of.assign(n, Network::npos);

    std::map<std::vector<std::size_t>, std::size_t> by_signature;
    for (std::size_t k = 0; k < n; ++k) {
        auto sig = observed_subpath(network, k, obs);
        if (sig.empty()) continue;
        auto [it, fresh] = by_signature.emplace(sig, part.groups.size());
        if (fresh) part.groups.push_back({std::move(sig), {}, 0.0});
        ObservedGroup& g = part.groups[it->second];
        g.paths.push_back(k);
        g.f_o += part.f[k];
        part.group_of[k] = it->second;
    }

    for (std::size_t k = 0; k < n; ++k) {
        const bool observed = part.group_of[k] != Network::npos;
        const bool has_cv = part.f[k] > 0.0;
        if (observed) {
            part.Q_o += part.f[k];
        } else {
            part.f_cv += part.f[k];
        }
        if (observed && has_cv) {
            part.path_class[k] = PathClass::observed_cv;
            part.K_o_cv.push_back(k);
        } else if (observed) {
            part.path_class[k] = PathClass::observed_only;
            part.K_o_only.push_back(k);
        } else if (has_cv) {
            part.path_class[k] = PathClass::cv_only;
            part.K_cv_only.push_back(k);
        } else {
            part.path_class[k] = PathClass::unobserved;
            part.K_unobserved.push_back(k);
        }
    }
    part.n_non = part.K_unobserved.size();
    return part;
}

}  // namespace uavloc
