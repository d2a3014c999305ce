#include "uavloc/queue_uncertainty.hpp"

#include <algorithm>
#include <limits>

#include "uavloc/errors.hpp"

namespace uavloc {

namespace {

void check_geometry(double w_a, double w_d, double R) {
    if (!(w_a > 0.0) || !(w_a < w_d)) throw InputError("queue geometry needs 0 < w_a < w_d");
    if (!(R >= 0.0)) throw InputError("red duration must be nonnegative");
}

}  // namespace

double QueueGeometry::apex_distance() const { return w_a * w_d * R / (w_d - w_a); }
double QueueGeometry::apex_time() const { return apex_distance() / w_a; }

bool QueueGeometry::contains(const PointTD& p, double tol) const {
    return p.d >= -tol && p.d <= w_a * p.t + tol && p.d >= w_d * (p.t - R) - tol;
}

const char* to_string(QueueShape s) {
    switch (s) {
        case QueueShape::zero: return "zero";
        case QueueShape::triangle: return "triangle";
        case QueueShape::trapezoid: return "trapezoid";
        case QueueShape::full: return "full";
    }
    return "?";
}

double global_queue_area(double w_a, double w_d, double R) {
    check_geometry(w_a, w_d, R);
    return 0.5 * w_a * w_d * R * R / (w_d - w_a);
}

PointTD parallel_cut_point(const PointTD& M, double w_a, double w_d, double R) {
    check_geometry(w_a, w_d, R);
    QueueGeometry g{w_a, w_d, R};
    if (!g.contains(M)) throw InputError("anchor lies outside the queue triangle");
    PointTD X;
    X.t = (w_d * R - w_a * M.t + M.d) / (w_d - w_a);
    X.d = w_d * (X.t - R);
    return X;
}

double nonqueued_crossing_distance(const QueueGeometry& g, double t) {
    return std::clamp(g.w_d * (t - g.R), 0.0, g.apex_distance());
}

QueueUncertainty queue_uncertainty_case4(const QueueGeometry& g, const std::vector<PointTD>& anchors,
                                         std::optional<double> d_N, bool strict) {
    QueueUncertainty q;
    q.S_global = global_queue_area(g.w_a, g.w_d, g.R);
    const double d_C = g.apex_distance();

    bool any = false;
    double d_low = 0.0, c = std::numeric_limits<double>::infinity();
    for (const PointTD& a : anchors) {
        if (!g.contains(a)) {
            if (strict) throw InconsistentObservation("queue anchor outside the global triangle");
            continue;
        }
        any = true;
        d_low = std::max(d_low, a.d);
        c = std::min(c, a.d - g.w_a * a.t);
    }
    if (!any || !(q.S_global > 0.0)) {
        q.S = q.S_global;
        q.U = q.S_global > 0.0 ? 1.0 : 0.0;
        q.shape = QueueShape::full;
        q.d_low = 0.0;
        q.d_top = d_C;
        q.c = 0.0;
        q.vertices = {{0.0, 0.0}, {g.R, 0.0}, {g.apex_time(), d_C}};
        return q;
    }
    c = std::min(c, 0.0);
    const double d_X = g.w_d * (g.w_a * g.R + c) / (g.w_d - g.w_a);
    double d_n = d_C;
    if (d_N) {
        if (strict && *d_N < d_low - 1e-9) throw InconsistentObservation("non-queued crossing N lies below Q");
        d_n = std::min(std::max(*d_N, 0.0), d_C);
    }
    q.d_low = d_low;
    q.c = c;
    q.d_top = std::max(d_low, std::min(d_n, d_X));

    auto t_acc = [&](double d) { return (d - c) / g.w_a; };   // on the parallel line
    auto t_dis = [&](double d) { return g.R + d / g.w_d; };   // on the dissipation wave
    const PointTD M{t_acc(d_low), d_low}, Q{t_dis(d_low), d_low};
    if (q.d_top <= d_low) {
        q.shape = QueueShape::zero;
        q.vertices = {M, Q};
    } else if (d_n < d_X) {
        const PointTD N{t_dis(d_n), d_n}, P{t_acc(d_n), d_n};
        q.shape = QueueShape::trapezoid;
        q.S = 0.5 * (Q.t - M.t + N.t - P.t) * (N.d - Q.d);
        q.vertices = {M, Q, N, P};
    } else {
        const PointTD X{t_dis(d_X), d_X};
        q.shape = QueueShape::triangle;
        q.S = 0.5 * (Q.t - M.t) * (X.d - Q.d);
        q.vertices = {M, Q, X};
    }
    q.S = std::clamp(q.S, 0.0, q.S_global);
    q.U = q.S / q.S_global;
    return q;
}

QueueUncertainty queue_uncertainty_case12(const QueueGeometry& g, int case_label, bool beyond_fov, double d_fov,
                                          double t_M) {
    if (case_label != 1 && case_label != 2) throw InputError("case 1/2 formula applied to case " + std::to_string(case_label));
    if (case_label == 1 || !beyond_fov) {
        QueueUncertainty q;
        q.S_global = global_queue_area(g.w_a, g.w_d, g.R);
        q.shape = QueueShape::zero;
        return q;
    }
    return queue_uncertainty_case4(g, {PointTD{t_M, d_fov}}, std::nullopt, false);
}

QueueUncertainty queue_uncertainty_case3(const QueueGeometry& g, double share) {
    QueueUncertainty q;
    q.S_global = global_queue_area(g.w_a, g.w_d, g.R);
    q.S = q.S_global * (1.0 - std::clamp(share, 0.0, 1.0));
    q.U = q.S_global > 0.0 ? q.S / q.S_global : 0.0;
    q.shape = q.S > 0.0 ? QueueShape::full : QueueShape::zero;
    return q;
}

bool region_contains(const QueueGeometry& g, const QueueUncertainty& q, const PointTD& p, double tol) {
    return p.d >= q.d_low - tol && p.d <= q.d_top + tol && p.d <= q.c + g.w_a * p.t + tol &&
           p.d >= g.w_d * (p.t - g.R) - tol;
}

}  // namespace uavloc
