#include <doctest.h>

#include "uavloc/arrival_uncertainty.hpp"
#include "uavloc/cycle_evidence.hpp"
#include "uavloc/envelope.hpp"
#include "uavloc/errors.hpp"

using namespace uavloc;

TEST_CASE("global arrival area") {
    CHECK(global_arrival_area(0.5, 90.0) == doctest::Approx(45.0));
    CHECK(global_arrival_area(1.0, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(global_arrival_area(0.0, 90.0), InputError);
}

TEST_CASE("case 1 and case 2") {
    CHECK(arrival_uncertainty_case12(1, true, 0.5, 90.0, 10.0, 30.0, 0).U == 0.0);
    CHECK(arrival_uncertainty_case12(2, false, 0.5, 90.0, 10.0, 30.0, 0).U == 0.0);
    // 20 s window, 4 vehicles seen joining from beyond the FoV: lower bound 0.2 veh/s.
    const ArrivalUncertainty a = arrival_uncertainty_case12(2, true, 0.5, 90.0, 10.0, 30.0, 4);
    CHECK(a.S == doctest::Approx(6.0));
    CHECK(a.U == doctest::Approx(6.0 / 45.0));
}

TEST_CASE("case 3 share rule") {
    CHECK(arrival_uncertainty_case3(movement_share({5.0}, 0), 0.5, 90.0).U == doctest::Approx(0.0));
    CHECK(arrival_uncertainty_case3(movement_share({0.0, 0.0, 0.0}, 1), 0.5, 90.0).U == doctest::Approx(2.0 / 3.0));
    CHECK(arrival_uncertainty_case3(movement_share({8.0, 2.0, 0.0}, 0), 0.5, 90.0).U == doctest::Approx(0.2));
}

TEST_CASE("case 4 CV types") {
    CycleArrivalObservation o;
    o.type = CvCycleType::type1;
    CHECK(arrival_uncertainty_case4_cv(o).U == 1.0);
    o.type = CvCycleType::type2;
    CHECK(arrival_uncertainty_case4_cv(o).U == 0.0);

    o.type = CvCycleType::type3i;
    o.t_G = 70.0;
    o.T_GH = 20.0;
    o.h_s = 2.0;
    o.T_HL = 10.0;  // 10 / (20 * 2) = 0.25 veh/s
    CHECK(lambda_GH_upper(o) == doctest::Approx(0.25));
    CHECK(arrival_uncertainty_case4_cv(o).S == doctest::Approx(5.0));
    CHECK(arrival_uncertainty_case4_cv(o).U == doctest::Approx(5.0 / 45.0));
    CHECK(cv_type_envelope(o).area() == doctest::Approx(5.0));

    CycleArrivalObservation p;
    p.type = CvCycleType::type3ii;
    p.t_F = 50.0;
    p.t_G = 70.0;
    p.lambda_FG_ub = 0.3;
    CHECK(arrival_uncertainty_case4_cv(p).S == doctest::Approx(16.0));
    CHECK(arrival_uncertainty_case4_cv(p).U == doctest::Approx(16.0 / 45.0));
    CHECK(cv_type_envelope(p).area() == doctest::Approx(16.0));
}

TEST_CASE("case 4 loop channel") {
    LoopCycleObservation o{0.5, 90.0, 30.0, 60.0, 6, 3};
    CHECK(arrival_uncertainty_case4_loop(o).S == doctest::Approx(36.0));
    CHECK(arrival_uncertainty_case4_loop(o).U == doctest::Approx(0.8));
    CHECK(loop_envelope(o).area() == doctest::Approx(36.0));

    LoopCycleObservation never{0.5, 90.0, 90.0, 90.0, 0, 0};
    CHECK(arrival_uncertainty_case4_loop(never).U == doctest::Approx(1.0));

    LoopCycleObservation saturated{0.5, 90.0, 40.0, 40.0, 20, 25};
    CHECK(arrival_uncertainty_case4_loop(saturated).U == doctest::Approx(0.0));
}

TEST_CASE("fused channels") {
    LoopCycleObservation loop{0.5, 90.0, 30.0, 60.0, 6, 3};
    CycleArrivalObservation cv;
    cv.type = CvCycleType::type3ii;
    cv.t_F = 50.0;
    cv.t_G = 70.0;
    cv.lambda_FG_ub = 0.3;
    // Hand intersection: [0,50] known, [50,60] 0.3, [60,70] 0.3-0.1, [70,90] 0.5-0.1.
    const ArrivalUncertainty f = arrival_uncertainty_case4_fused(cv_type_envelope(cv), loop_envelope(loop));
    CHECK(f.S == doctest::Approx(3.0 + 2.0 + 8.0));
    CHECK(f.S <= 16.0);

    CycleArrivalObservation t1;
    CHECK(arrival_uncertainty_case4_fused(cv_type_envelope(t1), loop_envelope(loop)).S == doctest::Approx(36.0));

    // Free-flow loop: 9 passings after 45 s lift the floor to 0.2 on [45, 90].
    LoopCycleObservation free{0.5, 90.0, 45.0, 45.0, 20, 9};
    CHECK(arrival_uncertainty_case4_fused(cv_type_envelope(cv), loop_envelope(free)).S ==
          doctest::Approx(0.1 * 20.0 + 0.3 * 20.0));

    // 45 passings after t_G contradict the CV bound of 0.3 on [50, 70].
    LoopCycleObservation heavy{0.5, 90.0, 45.0, 45.0, 20, 45};
    CHECK_THROWS_AS(arrival_uncertainty_case4_fused(cv_type_envelope(cv), loop_envelope(heavy)), InconsistentObservation);
}

TEST_CASE("envelope detects empty bands") {
    Envelope e(90.0, 0.5);
    e.upper(0.0, 30.0, 0.1);
    e.lower(10.0, 20.0, 0.3);
    CHECK_THROWS_AS(e.area(true), InconsistentObservation);
    CHECK(e.area(false) == doctest::Approx(0.1 * 20.0 + 0.5 * 60.0));
}

TEST_CASE("aggregation sums the labelled case") {
    UncertaintyTable t;
    t.movements.resize(3);
    t.movements[1].arrival_sum[1] = 80 * (6.0 / 45.0);
    t.movements[0].arrival_sum[3] = 80.0;
    CHECK(aggregate_F_arrival(t, {1, 2, 1}) == doctest::Approx(10.6667).epsilon(1e-4));
    CHECK(aggregate_F_arrival(t, {1, 1, 1}) == 0.0);
    CHECK_THROWS_AS(aggregate_F_arrival(t, {1, 1}), InputError);
}
