#pragma once

#include <atomic>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "uavloc/cycle_evidence.hpp"
#include "uavloc/observability.hpp"
#include "uavloc/path_uncertainty.hpp"
#include "uavloc/scenario.hpp"

namespace uavloc {

struct ObjectiveWeights {
    double w1 = 26.0;
    double w2 = 1.0;
    double w3 = 1.0;

    /// "26:1:1", or the presets "moum", "soum-iu", "soum-pu".
    static ObjectiveWeights parse(const std::string& text);
    std::string to_string() const;
};

struct ObjectiveValue {
    double F_path = 0.0;
    double F_arrival = 0.0;
    double F_queue = 0.0;
    double Z = 0.0;
    double fitness() const { return -Z; }
};

/// Placement objective over one scenario. Thread-safe; results are memoised
/// per deployment bit-vector.
class Objective {
public:
    Objective(const Scenario& scenario, ObjectiveWeights weights, EvidenceOptions opts = {});

    const Scenario& scenario() const { return scenario_; }
    const Network& network() const { return scenario_.network; }
    const ObjectiveWeights& weights() const { return weights_; }
    const UncertaintyTable& table() const { return table_; }
    const std::vector<double>& cv_flows() const { return cv_flows_; }
    std::size_t sites() const { return scenario_.network.site_count(); }

    ObjectiveValue evaluate(const Deployment& u) const;
    ObjectiveValue evaluate_uncached(const Deployment& u) const;

    /// Per site: sum over its movements and cycles of U_arrival + U_queue under `u`.
    std::vector<double> site_uncertainty(const Deployment& u) const;

    std::size_t evaluations() const { return evaluations_.load(); }
    std::size_t cache_size() const;

private:
    const Scenario& scenario_;
    ObjectiveWeights weights_;
    UncertaintyTable table_;
    std::vector<double> cv_flows_;

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::string, ObjectiveValue> cache_;
    mutable std::atomic<std::size_t> evaluations_{0};
};

struct MarginalReport {
    std::vector<double> decreases;  // decreases[N] = Z(N) - Z(N+1)
    std::size_t knee = 0;
    bool monotone = true;
    std::string warning;
};

MarginalReport marginal_uncertainty(const std::vector<double>& curve, double fraction = 0.25);

}  // namespace uavloc
