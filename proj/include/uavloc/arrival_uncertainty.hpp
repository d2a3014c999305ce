#pragma once

#include <vector>

#include "uavloc/envelope.hpp"

namespace uavloc {

struct ArrivalUncertainty {
    double S = 0.0;
    double S_global = 0.0;
    double U = 0.0;
};

double global_arrival_area(double lambda_u, double C);

/// Case 1: fully observed. Case 2: arrivals beyond the FoV during [t_F, t_G] are only
/// bounded below by n_HB vehicles observed to join from beyond it.
ArrivalUncertainty arrival_uncertainty_case12(int case_label, bool beyond_fov, double lambda_u, double C, double t_F,
                                              double t_G, int n_HB);

/// Share of movement `index` among per-movement CV counts on its link; uniform when all zero.
double movement_share(const std::vector<double>& cv_counts, std::size_t index);

ArrivalUncertainty arrival_uncertainty_case3(double share, double lambda_u, double C);

enum class CvCycleType { type1, type2, type3i, type3ii };

struct CycleArrivalObservation {
    CvCycleType type = CvCycleType::type1;
    double lambda_u = 0.5;
    double C = 90.0;
    double t_F = 0.0;
    double t_G = 0.0;
    double T_HL = 0.0;  // residual saturated-service time (type 3i)
    double T_GH = 0.0;  // unknown window (type 3i)
    double h_s = 1.8;
    double lambda_FG_ub = 0.0;  // bound on [t_F, t_G] (type 3ii)
    /// Type 3i width: false uses (C - t_G), true uses T_GH.
    bool type3i_uses_T_GH = false;
};

double lambda_GH_upper(const CycleArrivalObservation& obs);

ArrivalUncertainty arrival_uncertainty_case4_cv(const CycleArrivalObservation& obs);
Envelope cv_type_envelope(const CycleArrivalObservation& obs);

struct LoopCycleObservation {
    double lambda_u = 0.5;
    double C = 90.0;
    double t_F = 0.0;
    double t_G = 0.0;
    int n_AF = 0;
    int n_GB = 0;
};

ArrivalUncertainty arrival_uncertainty_case4_loop(const LoopCycleObservation& obs);
Envelope loop_envelope(const LoopCycleObservation& obs);

/// Band-wise intersection of the two channels; throws InconsistentObservation when empty.
ArrivalUncertainty arrival_uncertainty_case4_fused(const Envelope& cv, const Envelope& loop);

ArrivalUncertainty arrival_from_area(double S, double lambda_u, double C);

}  // namespace uavloc
