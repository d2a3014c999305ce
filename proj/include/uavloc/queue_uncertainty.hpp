#pragma once

#include <optional>
#include <string>
#include <vector>

namespace uavloc {

/// (seconds since red start, meters upstream of the stopline)
struct PointTD {
    double t = 0.0;
    double d = 0.0;
};

struct QueueGeometry {
    double w_a = 3.0;
    double w_d = 4.0;
    double R = 45.0;

    double apex_distance() const;  // d_C
    double apex_time() const;      // t_C
    bool contains(const PointTD& p, double tol = 1e-9) const;
};

enum class QueueShape { zero, triangle, trapezoid, full };
const char* to_string(QueueShape s);

struct QueueUncertainty {
    double S = 0.0;
    double S_global = 0.0;
    double U = 0.0;
    QueueShape shape = QueueShape::full;
    std::vector<PointTD> vertices;  // polygon of the feasible region, counter-clockwise not guaranteed

    // Region parameters: d_low <= d <= d_top, d <= c + w_a t, d >= w_d (t - R).
    double d_low = 0.0;
    double d_top = 0.0;
    double c = 0.0;
};

double global_queue_area(double w_a, double w_d, double R);

/// Line through M parallel to AC meets BC at X. Throws InputError when M lies outside the triangle.
PointTD parallel_cut_point(const PointTD& M, double w_a, double w_d, double R);

/// Case 1 or case 2 with the queue inside the FoV give zero; case 2 beyond the FoV uses
/// M = (t_M, D_fov) with Q on the dissipation wave and no upper anchor.
QueueUncertainty queue_uncertainty_case12(const QueueGeometry& g, int case_label, bool beyond_fov, double d_fov,
                                          double t_M);

QueueUncertainty queue_uncertainty_case3(const QueueGeometry& g, double share);

/// Feasible back-of-queue region from queued anchors (CV join points, loop anchor) and the
/// crossing N of the first non-queued trajectory with the dissipation wave.
/// With no anchor the full triangle is returned. Strict mode throws
/// InconsistentObservation for anchors outside the triangle or d_N below d_Q; otherwise such
/// anchors are ignored and the region is clamped.
QueueUncertainty queue_uncertainty_case4(const QueueGeometry& g, const std::vector<PointTD>& anchors,
                                         std::optional<double> d_N, bool strict = false);

/// N for a non-queued trajectory arriving at `t`: its crossing with the dissipation wave, capped at the apex.
double nonqueued_crossing_distance(const QueueGeometry& g, double t);

bool region_contains(const QueueGeometry& g, const QueueUncertainty& q, const PointTD& p, double tol = 1e-6);

}  // namespace uavloc
