#include "uavloc/arrival_uncertainty.hpp"

#include <algorithm>

#include "uavloc/errors.hpp"

namespace uavloc {

namespace {

double rate_bound(double count, double window, double lambda_u) {
    if (!(window > 0.0)) return 0.0;
    return std::clamp(count / window, 0.0, lambda_u);
}

}  // namespace

double global_arrival_area(double lambda_u, double C) {
    if (!(lambda_u > 0.0) || !(C > 0.0)) throw InputError("lambda_u and C must be positive");
    return lambda_u * C;
}

ArrivalUncertainty arrival_from_area(double S, double lambda_u, double C) {
    ArrivalUncertainty a;
    a.S_global = global_arrival_area(lambda_u, C);
    a.S = std::clamp(S, 0.0, a.S_global);
    a.U = a.S / a.S_global;
    return a;
}

ArrivalUncertainty arrival_uncertainty_case12(int case_label, bool beyond_fov, double lambda_u, double C, double t_F,
                                              double t_G, int n_HB) {
    if (case_label != 1 && case_label != 2) throw InputError("case 1/2 formula applied to case " + std::to_string(case_label));
    if (case_label == 1 || !beyond_fov) return arrival_from_area(0.0, lambda_u, C);
    const double window = std::max(0.0, t_G - t_F);
    const double lb = rate_bound(n_HB, window, lambda_u);
    return arrival_from_area((lambda_u - lb) * window, lambda_u, C);
}

double movement_share(const std::vector<double>& cv_counts, std::size_t index) {
    if (index >= cv_counts.size()) throw InputError("movement share index out of range");
    double total = 0.0;
    for (double c : cv_counts) total += c;
    if (!(total > 0.0)) return 1.0 / static_cast<double>(cv_counts.size());
    return cv_counts[index] / total;
}

ArrivalUncertainty arrival_uncertainty_case3(double share, double lambda_u, double C) {
    const double S_global = global_arrival_area(lambda_u, C);
    return arrival_from_area(S_global * (1.0 - std::clamp(share, 0.0, 1.0)), lambda_u, C);
}

double lambda_GH_upper(const CycleArrivalObservation& obs) {
    if (!(obs.T_GH > 0.0) || !(obs.h_s > 0.0)) return 0.0;
    return std::clamp(obs.T_HL / (obs.T_GH * obs.h_s), 0.0, obs.lambda_u);
}

ArrivalUncertainty arrival_uncertainty_case4_cv(const CycleArrivalObservation& obs) {
    const double S_global = global_arrival_area(obs.lambda_u, obs.C);
    switch (obs.type) {
        case CvCycleType::type1: return arrival_from_area(S_global, obs.lambda_u, obs.C);
        case CvCycleType::type2: return arrival_from_area(0.0, obs.lambda_u, obs.C);
        case CvCycleType::type3i: {
            const double width = obs.type3i_uses_T_GH ? obs.T_GH : obs.C - obs.t_G;
            return arrival_from_area(lambda_GH_upper(obs) * width, obs.lambda_u, obs.C);
        }
        case CvCycleType::type3ii: {
            const double fg = std::clamp(obs.lambda_FG_ub, 0.0, obs.lambda_u);
            return arrival_from_area(obs.lambda_u * (obs.C - obs.t_G) + fg * (obs.t_G - obs.t_F), obs.lambda_u, obs.C);
        }
    }
    throw InvariantViolation("unclassified CV cycle type");
}

Envelope cv_type_envelope(const CycleArrivalObservation& obs) {
    Envelope env(obs.C, obs.lambda_u);
    switch (obs.type) {
        case CvCycleType::type1: break;
        case CvCycleType::type2: env.known(0.0, obs.C); break;
        case CvCycleType::type3i:
            env.known(0.0, obs.t_G);
            env.upper(obs.t_G, obs.C, lambda_GH_upper(obs));
            break;
        case CvCycleType::type3ii:
            env.known(0.0, obs.t_F);
            env.upper(obs.t_F, obs.t_G, obs.lambda_FG_ub);
            break;
    }
    return env;
}

ArrivalUncertainty arrival_uncertainty_case4_loop(const LoopCycleObservation& o) {
    const double af = rate_bound(o.n_AF, o.t_F, o.lambda_u);
    const double gb = rate_bound(o.n_GB, o.C - o.t_G, o.lambda_u);
    const double S = o.lambda_u * (o.t_G - o.t_F) + (o.lambda_u - af) * o.t_F + (o.lambda_u - gb) * (o.C - o.t_G);
    return arrival_from_area(S, o.lambda_u, o.C);
}

Envelope loop_envelope(const LoopCycleObservation& o) {
    Envelope env(o.C, o.lambda_u);
    env.lower(0.0, o.t_F, rate_bound(o.n_AF, o.t_F, o.lambda_u));
    env.lower(o.t_G, o.C, rate_bound(o.n_GB, o.C - o.t_G, o.lambda_u));
    return env;
}

ArrivalUncertainty arrival_uncertainty_case4_fused(const Envelope& cv, const Envelope& loop) {
    Envelope env = cv;
    env.intersect(loop);
    return arrival_from_area(env.area(true), env.lambda_u(), env.length());
}

}  // namespace uavloc
