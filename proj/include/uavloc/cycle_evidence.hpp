#pragma once

#include <array>
#include <vector>

#include "uavloc/arrival_uncertainty.hpp"
#include "uavloc/queue_uncertainty.hpp"
#include "uavloc/scenario.hpp"

namespace uavloc {

struct EvidenceOptions {
    bool use_cv = true;
    bool use_loops = true;
};

/// Observation channels extracted once per scenario.
struct ObservationSet {
    CvObservations cv;
    LoopEventLog loops;
};

ObservationSet extract_observations(const Scenario& scenario);

QueueGeometry queue_geometry(const Scenario& scenario, std::size_t m);

CvCycleType classify_cv_cycle(const CvCycle& cur, const CvCycle* next);

/// Case-4 arrival band: intersection of every CV and loop evidence item for the cycle.
Envelope case4_arrival_envelope(const Scenario& scenario, const ObservationSet& obs, std::size_t m, int j,
                                const EvidenceOptions& opts = {});

/// Case-4 queue region from CV join points, the first non-queued CV and the loop anchor.
QueueUncertainty case4_queue_region(const Scenario& scenario, const ObservationSet& obs, std::size_t m, int j,
                                    const EvidenceOptions& opts = {});

/// CV-count share of movement m among the movements of its inbound link during cycle j.
double case3_share(const Scenario& scenario, std::size_t m, int j);

/// Deployment-independent U per movement, per observability case, per cycle.
struct MovementCaseTable {
    std::array<std::vector<double>, 4> arrival;
    std::array<std::vector<double>, 4> queue;
    std::array<double, 4> arrival_sum{};
    std::array<double, 4> queue_sum{};
};

struct UncertaintyTable {
    std::vector<MovementCaseTable> movements;
};

UncertaintyTable build_uncertainty_table(const Scenario& scenario, const EvidenceOptions& opts = {});

/// Four-case indicator sums over movements and cycles.
double aggregate_F_arrival(const UncertaintyTable& table, const std::vector<int>& case_label);
double aggregate_F_queue(const UncertaintyTable& table, const std::vector<int>& case_label);

}  // namespace uavloc
