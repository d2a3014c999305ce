#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavloc/network.hpp"

namespace uavloc {

struct MovementSignal {
    double cycle = 90.0;   // C, seconds
    double red = 45.0;     // R, seconds; each cycle starts with red
    double offset = 0.0;   // absolute time of the first red start
};

struct SignalPlan {
    std::vector<MovementSignal> movements;  // indexed like network.movements()
    double horizon = 3600.0;
};

enum class ArrivalProcess { poisson, uniform };

struct FlowModel {
    std::vector<double> path_demand_vph;  // indexed like network.paths()
    ArrivalProcess process = ArrivalProcess::poisson;
    double saturation_headway = 1.8;  // h_s, s/veh
    double w_a = 3.0;                 // accumulation wave speed, m/s
    double w_d = 4.0;                 // dissipation wave speed, m/s
    double lambda_u = 0.5;            // max arrival rate, veh/s
    double free_flow_speed = 13.9;    // m/s

    double jam_spacing() const { return w_d * saturation_headway; }
};

struct LoopDetector {
    std::string link;
    double position = 25.0;  // meters upstream of the stopline
};

struct ScenarioInputs {
    NetworkDescription network;
    SignalPlan signals;
    FlowModel flow;
    std::vector<LoopDetector> loops;
    double penetration = 0.1;
    std::uint64_t seed = 1;
    double uav_half_extent = 100.0;  // half side of the square detection box, m
    double bin_width = 1.0;          // arrival profile time step, s
};

/// One vehicle's passage through one movement. Absolute times in seconds.
struct MovementPass {
    std::size_t movement = 0;
    double arrival = 0.0;    // time reaching the back of queue
    double departure = 0.0;  // stopline crossing
    int cycle = 0;           // arrival cycle index
    int service_cycle = 0;   // cycle whose green served it
    bool queued = false;
    // Join point relative to the arrival cycle's red start; meaningful iff queued.
    double join_t = 0.0;
    double join_d = 0.0;
};

struct VehicleRecord {
    std::size_t id = 0;
    std::size_t path = 0;
    bool is_cv = false;
    double release = 0.0;
    std::vector<MovementPass> passes;
};

struct VehicleRef {
    std::size_t vehicle = 0;
    std::size_t step = 0;
};

struct CycleTruth {
    std::vector<VehicleRef> arrivals;   // arrival order
    std::vector<VehicleRef> residuals;  // arrived earlier, still waiting at red start
    std::vector<int> profile;          // arrivals per time bin
    double boq = 0.0;                  // m
    double boq_time = 0.0;             // release time of the back of queue, s since red start
    int served = 0;
    int residual_in = 0;
    int residual_out = 0;
    bool consistent = true;  // join points fit the triangular wave model
};

struct MovementTruth {
    std::vector<VehicleRef> order;  // every pass, in service order
    std::vector<CycleTruth> cycles;
};

struct GroundTruth {
    std::vector<MovementTruth> movements;
    std::vector<double> path_flow;      // vehicles released per path
    std::vector<double> link_flow;      // vehicles entering each link
    std::vector<double> movement_flow;  // vehicles arriving in analysed cycles
};

struct Scenario {
    ScenarioInputs inputs;
    Network network;
    std::vector<VehicleRecord> vehicles;
    GroundTruth truth;

    const MovementSignal& signal(std::size_t m) const { return inputs.signals.movements[m]; }
    const FlowModel& flow() const { return inputs.flow; }
    int cycle_count(std::size_t m) const;
    double red_start(std::size_t m, int j) const;
    const MovementPass& pass(const VehicleRef& r) const { return vehicles[r.vehicle].passes[r.step]; }
};

/// Throws InputError on invalid inputs and InfeasibleError when demand exceeds
/// a movement's capacity or a queue would overflow its link.
Scenario generate_scenario(ScenarioInputs inputs);

/// Rebuilds queue classification and ground truth from vehicle passes whose
/// arrival and departure times are already set.
Scenario assemble_scenario(ScenarioInputs inputs, std::vector<VehicleRecord> vehicles);

// ---- observation channels -------------------------------------------------

struct CvRecord {
    std::size_t vehicle = 0;
    std::size_t step = 0;
    double arrival = 0.0;    // s since red start of this cycle
    double departure = 0.0;  // s since red start of this cycle (may exceed C)
    double join_t = 0.0;
    double join_d = 0.0;
    bool served_in_cycle = true;
};

struct CvCycle {
    std::vector<CvRecord> queued;        // first-time queued, join order
    std::vector<CvRecord> twice_queued;  // residual from an earlier cycle
    std::vector<CvRecord> non_queued;    // crossing order
};

/// [movement][cycle]
using CvObservations = std::vector<std::vector<CvCycle>>;

CvObservations extract_cv_observations(const Scenario& scenario);

struct LoopCycle {
    bool occupied = false;
    double t_F = 0.0;  // occupancy start, s since red start
    double t_G = 0.0;  // occupancy end
    int n_AF = 0;      // free passings before t_F
    int n_GB = 0;      // free passings at or after t_G
    int over = 0;      // vehicles that stopped over or beyond the detector
};

struct LoopChannel {
    std::size_t link = 0;
    double position = 0.0;
    std::vector<double> passings;  // absolute times
    std::vector<std::size_t> movements;
    std::vector<std::vector<LoopCycle>> cycles;  // parallel to movements
};

struct LoopEventLog {
    std::vector<LoopChannel> channels;
    /// Channel index per movement, npos when its link has no detector.
    std::vector<std::size_t> channel_of_movement;
};

LoopEventLog extract_loop_events(const Scenario& scenario, const std::vector<LoopDetector>& detectors);

struct UavCycleView {
    bool beyond_fov = false;
    double t_F = 0.0;  // back of queue crosses D_fov
    double t_G = 0.0;  // dissipation wave passes the back of queue
    int n_HB = 0;      // vehicles joining beyond D_fov
    int visible = 0;
};

struct UavMovementView {
    int case_label = 4;
    double d_fov = 0.0;
    std::vector<UavCycleView> cycles;
};

/// Visible distance along a movement's inbound link from the box centred on its intersection.
double movement_fov_distance(const Scenario& scenario, std::size_t m);

/// Cycle-level view of the back of queue against a distance threshold, shared by
/// the UAV and loop channels. Returns false when the queue never reaches `distance`.
bool queue_crossing(const Scenario& scenario, std::size_t m, int j, double distance, double& t_cross);

/// UAV view of one cycle assuming the movement's own intersection hosts a UAV.
UavCycleView uav_cycle_view(const Scenario& scenario, std::size_t m, int j, double d_fov);

class Deployment;
std::vector<UavMovementView> clip_uav_view(const Scenario& scenario, const Deployment& deployment);

}  // namespace uavloc
