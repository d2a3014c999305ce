#include "uavloc/objective.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <sstream>

#include "uavloc/errors.hpp"

namespace uavloc {

ObjectiveWeights ObjectiveWeights::parse(const std::string& text) {
    if (text == "moum") return {26.0, 1.0, 1.0};
    if (text == "soum-iu") return {0.0, 1.0, 1.0};
    if (text == "soum-pu") return {1.0, 0.0, 0.0};
    ObjectiveWeights w;
    std::stringstream ss(text);
    std::string part;
    std::vector<double> v;
    while (std::getline(ss, part, ':')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw InputError("bad weight '" + part + "' in '" + text + "'");
        }
    }
    if (v.size() != 3) throw InputError("weights need the form w1:w2:w3, got '" + text + "'");
    for (double x : v) {
        if (!(x >= 0.0)) throw InputError("weights must be nonnegative");
    }
    if (v[0] + v[1] + v[2] <= 0.0) throw InputError("weights must not all be zero");
    w.w1 = v[0];
    w.w2 = v[1];
    w.w3 = v[2];
    return w;
}

std::string ObjectiveWeights::to_string() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%g:%g:%g", w1, w2, w3);
    return buf;
}

Objective::Objective(const Scenario& scenario, ObjectiveWeights weights, EvidenceOptions opts)
    : scenario_(scenario),
      weights_(weights),
      table_(build_uncertainty_table(scenario, opts)),
      cv_flows_(cv_path_flows(scenario)) {}

ObjectiveValue Objective::evaluate_uncached(const Deployment& u) const {
    evaluations_.fetch_add(1);
    const MovementObservability obs = movement_observability(scenario_.network, u);
    ObjectiveValue v;
    v.F_path = path_uncertainty(partition_paths(scenario_.network, obs, cv_flows_)).F_path;
    v.F_arrival = aggregate_F_arrival(table_, obs.case_label);
    v.F_queue = aggregate_F_queue(table_, obs.case_label);
    v.Z = weights_.w1 * v.F_path + weights_.w2 * v.F_arrival + weights_.w3 * v.F_queue;
    return v;
}

ObjectiveValue Objective::evaluate(const Deployment& u) const {
    const std::string key = u.to_string();
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    ObjectiveValue v = evaluate_uncached(u);
    std::unique_lock lock(mutex_);
    cache_.emplace(key, v);
    return v;
}

std::size_t Objective::cache_size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
}

std::vector<double> Objective::site_uncertainty(const Deployment& u) const {
    const Network& net = scenario_.network;
    const MovementObservability obs = movement_observability(net, u);
    std::vector<double> out(net.site_count(), 0.0);
    for (std::size_t m = 0; m < net.movements().size(); ++m) {
        const std::size_t site = net.site_of(net.movement_intersection(m));
        if (site == Network::npos) continue;
        const int c = obs.case_label[m] - 1;
        out[site] += table_.movements[m].arrival_sum[c] + table_.movements[m].queue_sum[c];
    }
    return out;
}

MarginalReport marginal_uncertainty(const std::vector<double>& curve, double fraction) {
    MarginalReport rep;
    if (curve.size() < 2) return rep;
    double max_dec = 0.0;
    for (std::size_t n = 0; n + 1 < curve.size(); ++n) {
        const double d = curve[n] - curve[n + 1];
        rep.decreases.push_back(d);
        max_dec = std::max(max_dec, d);
        if (d < -1e-9) {
            rep.monotone = false;
            if (rep.warning.empty()) {
                rep.warning = "curve increases from N=" + std::to_string(n) + " to N=" + std::to_string(n + 1) +
                              "; solver result is likely suboptimal";
            }
        }
    }
    if (max_dec <= 0.0) return rep;
    for (std::size_t n = 0; n < rep.decreases.size(); ++n) {
        if (rep.decreases[n] < fraction * max_dec) {
            rep.knee = n;
            return rep;
        }
    }
    rep.knee = rep.decreases.size();
    return rep;
}

}  // namespace uavloc
