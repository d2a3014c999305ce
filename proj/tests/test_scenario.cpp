#include <doctest.h>

#include "helpers.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/observability.hpp"

using namespace uavloc;

namespace {

// One-movement link; vehicles reach the stopline area at the given times and are
// served FIFO at the saturation headway during green.
Scenario burst(const std::vector<double>& arrivals, std::size_t cv_index, double red = 45.0) {
    ScenarioInputs in = testutil::line_inputs(1, 300.0, 0.0);
    in.signals.movements[0] = {90.0, red, 0.0};
    in.signals.horizon = 270.0;
    in.loops = {{"W-1", 25.0}};
    const double h = in.flow.saturation_headway;
    std::vector<VehicleRecord> vehicles;
    double last = -1e9;
    for (std::size_t k = 0; k < arrivals.size(); ++k) {
        // Rounded so that repeated headway sums land exactly on the red start.
        double dep = std::round(std::max(arrivals[k], last + h) * 1e6) / 1e6;
        const double within = std::fmod(dep, 90.0);
        if (within < red) dep = dep - within + red;
        last = dep;
        VehicleRecord v;
        v.id = k;
        v.path = 0;
        v.is_cv = k == cv_index;
        v.release = arrivals[k] - 22.0;
        MovementPass p;
        p.arrival = arrivals[k];
        p.departure = dep;
        v.passes = {p};
        vehicles.push_back(v);
    }
    return assemble_scenario(in, vehicles);
}

}  // namespace

TEST_CASE("zero demand gives empty profiles and no queues") {
    const Scenario sc = generate_scenario(testutil::line_inputs(3, 300.0, 0.0));
    CHECK(sc.vehicles.empty());
    for (const auto& mt : sc.truth.movements) {
        for (const auto& c : mt.cycles) {
            CHECK(c.boq == 0.0);
            for (int b : c.profile) CHECK(b == 0);
        }
    }
}

TEST_CASE("one vehicle per cycle queues one jam spacing") {
    ScenarioInputs in = testutil::line_inputs(1, 300.0, 40.0);  // one release every 90 s
    in.flow.process = ArrivalProcess::uniform;
    in.signals.movements[0] = {90.0, 60.0, 0.0};
    const Scenario sc = generate_scenario(in);
    const auto& cycles = sc.truth.movements[0].cycles;
    REQUIRE(cycles.size() == 10);
    for (const auto& c : cycles) CHECK(c.boq == doctest::Approx(in.flow.jam_spacing()));
}

TEST_CASE("full penetration marks every vehicle") {
    ScenarioInputs in = preset_grid(2, 2);
    in.penetration = 1.0;
    const Scenario sc = generate_scenario(in);
    REQUIRE_FALSE(sc.vehicles.empty());
    for (const auto& v : sc.vehicles) CHECK(v.is_cv);
}

TEST_CASE("generation is deterministic per seed") {
    ScenarioInputs in = preset_grid(2, 3);
    in.seed = 77;
    const Scenario a = generate_scenario(in), b = generate_scenario(in);
    REQUIRE(a.vehicles.size() == b.vehicles.size());
    for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
        CHECK(a.vehicles[i].is_cv == b.vehicles[i].is_cv);
        CHECK(a.vehicles[i].release == b.vehicles[i].release);
        for (std::size_t k = 0; k < a.vehicles[i].passes.size(); ++k) {
            CHECK(a.vehicles[i].passes[k].departure == b.vehicles[i].passes[k].departure);
        }
    }
    in.seed = 78;
    const Scenario c = generate_scenario(in);
    CHECK(c.vehicles.size() != a.vehicles.size());
}

TEST_CASE("demand above capacity is rejected with the movement name") {
    ScenarioInputs in = testutil::line_inputs(2, 300.0, 1200.0);
    try {
        generate_scenario(in);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find(in.network.movements[0].id) != std::string::npos);
    }
}

TEST_CASE("vehicles arriving in green without a queue are non-queued") {
    const Scenario sc = burst({60.0}, 0);
    const CvObservations cv = extract_cv_observations(sc);
    REQUIRE(cv[0].size() >= 1);
    CHECK(cv[0][0].queued.empty());
    REQUIRE(cv[0][0].non_queued.size() == 1);
    CHECK(cv[0][0].non_queued[0].arrival == 60.0);
    CHECK(cv[0][1].non_queued.empty());  // no CVs: empty lists
}

TEST_CASE("overflowing CV reappears as twice-queued") {
    std::vector<double> arr;
    for (int k = 1; k <= 30; ++k) arr.push_back(k);
    const Scenario sc = burst(arr, 27);  // green serves 25 per cycle
    const auto& c0 = sc.truth.movements[0].cycles[0];
    CHECK(c0.served == 25);
    CHECK(c0.residual_out == 5);
    const CvObservations cv = extract_cv_observations(sc);
    REQUIRE(cv[0][0].queued.size() == 1);
    CHECK_FALSE(cv[0][0].queued[0].served_in_cycle);
    REQUIRE(cv[0][1].twice_queued.size() == 1);
    CHECK(cv[0][1].twice_queued[0].vehicle == 27);
}

TEST_CASE("loop occupancy window follows the accumulation and dissipation waves") {
    std::vector<double> arr;
    for (int k = 1; k <= 15; ++k) arr.push_back(k);
    const Scenario sc = burst(arr, 99);
    // Saturated arrivals: the queue tail moves at w_a = 3 m/s, so the loop at 25 m
    // is reached at 25/3 s and released by the dissipation wave at 45 + 25/4 s.
    const LoopEventLog log = extract_loop_events(sc, sc.inputs.loops);
    REQUIRE(log.channels.size() == 1);
    const LoopCycle& lc = log.channels[0].cycles[0][0];
    CHECK(lc.occupied);
    CHECK(lc.t_F == doctest::Approx(25.0 / 3.0));
    CHECK(lc.t_G == doctest::Approx(45.0 + 25.0 / 4.0));
    CHECK(lc.n_AF == 3);  // 7.2, 14.4 and 21.6 m stop short of the loop
    CHECK(lc.n_AF + lc.n_GB + lc.over == 15);
}

TEST_CASE("loop never reached leaves no occupancy window") {
    const Scenario sc = burst({1.0, 2.0}, 99);
    const LoopEventLog log = extract_loop_events(sc, sc.inputs.loops);
    for (const LoopCycle& lc : log.channels[0].cycles[0]) CHECK_FALSE(lc.occupied);
    std::vector<LoopDetector> bad{{"W-1", 400.0}};
    CHECK_THROWS_AS(extract_loop_events(sc, bad), InputError);
}

TEST_CASE("UAV cases on a three-site chain") {
    const Scenario sc = generate_scenario(testutil::line_inputs(3, 300.0, 100.0));
    auto all = clip_uav_view(sc, Deployment::all(3));
    for (std::size_t m = 1; m < 3; ++m) CHECK(all[m].case_label == 1);
    CHECK(all[0].case_label == 2);  // its upstream node is a boundary
    for (const auto& v : clip_uav_view(sc, Deployment::none(3))) CHECK(v.case_label == 4);

    auto mid = clip_uav_view(sc, Deployment::from_sites(3, {1}, 1));
    CHECK(mid[0].case_label == 4);
    CHECK(mid[1].case_label == 2);
    CHECK(mid[2].case_label == 3);
    CHECK(mid[1].d_fov == doctest::Approx(100.0));
}

TEST_CASE("generated ground truth respects link length and conservation") {
    const Scenario sc = generate_scenario(preset_shinan18());
    for (std::size_t m = 0; m < sc.network.movements().size(); ++m) {
        const double L = sc.network.links()[sc.network.movement_inbound(m)].length;
        for (const auto& c : sc.truth.movements[m].cycles) {
            CHECK(c.boq <= L);
            CHECK(c.residual_in + static_cast<int>(c.arrivals.size()) == c.served + c.residual_out);
        }
    }
}
