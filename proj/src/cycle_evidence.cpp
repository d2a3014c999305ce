#include "uavloc/cycle_evidence.hpp"

#include <algorithm>
#include <limits>

#include "uavloc/errors.hpp"

namespace uavloc {

ObservationSet extract_observations(const Scenario& scenario) {
    return {extract_cv_observations(scenario), extract_loop_events(scenario, scenario.inputs.loops)};
}

QueueGeometry queue_geometry(const Scenario& scenario, std::size_t m) {
    return {scenario.flow().w_a, scenario.flow().w_d, scenario.signal(m).red};
}

CvCycleType classify_cv_cycle(const CvCycle& cur, const CvCycle* next) {
    if (cur.queued.empty() && cur.twice_queued.empty() && cur.non_queued.empty()) return CvCycleType::type1;
    const bool overflow =
        std::any_of(cur.queued.begin(), cur.queued.end(), [](const CvRecord& r) { return !r.served_in_cycle; });
    if (overflow) return next && !next->queued.empty() ? CvCycleType::type2 : CvCycleType::type3i;
    return CvCycleType::type3ii;
}

namespace {

const LoopCycle* loop_cycle(const ObservationSet& obs, std::size_t m, int j) {
    const std::size_t ch = obs.loops.channel_of_movement.empty() ? Network::npos : obs.loops.channel_of_movement[m];
    if (ch == Network::npos) return nullptr;
    const LoopChannel& channel = obs.loops.channels[ch];
    for (std::size_t k = 0; k < channel.movements.size(); ++k) {
        if (channel.movements[k] == m) return &channel.cycles[k].at(j);
    }
    return nullptr;
}

}  // namespace

Envelope case4_arrival_envelope(const Scenario& sc, const ObservationSet& obs, std::size_t m, int j,
                                const EvidenceOptions& opts) {
    const double C = sc.signal(m).cycle, R = sc.signal(m).red;
    const double lambda_u = sc.flow().lambda_u, h_s = sc.flow().saturation_headway;
    Envelope env(C, lambda_u);

    if (opts.use_cv) {
        const auto& cycles = obs.cv[m];
        const CvCycle& cur = cycles.at(j);
        const CvCycle* next = j + 1 < static_cast<int>(cycles.size()) ? &cycles[j + 1] : nullptr;
        for (const CvRecord& F : cur.queued) {
            env.known(0.0, F.arrival);
            if (F.served_in_cycle || !next) continue;
            // Everything arriving after an overflowing CV is served in the next cycle.
            if (!next->queued.empty()) {
                env.known(F.arrival, C);
            }
            for (const CvRecord& L : next->non_queued) {
                CycleArrivalObservation o;
                o.lambda_u = lambda_u;
                o.C = C;
                o.h_s = h_s;
                o.T_HL = std::max(0.0, (L.departure + C) - F.departure);
                o.T_GH = C - F.arrival;
                env.upper(F.arrival, C, lambda_GH_upper(o));
            }
        }
        for (const CvRecord& G : cur.non_queued) {
            auto bound = [&](double t_F, double t_L) {
                const double window = G.arrival - t_F;
                if (!(window > 0.0)) return;
                env.upper(t_F, G.arrival, std::max(0.0, G.departure - t_L) / (window * h_s));
            };
            bound(0.0, R);
            for (const CvRecord& F : cur.queued) {
                if (F.arrival < G.arrival) bound(F.arrival, F.departure);
            }
        }
    }

    if (opts.use_loops) {
        if (const LoopCycle* lc = loop_cycle(obs, m, j)) {
            env.intersect(loop_envelope({lambda_u, C, lc->t_F, lc->t_G, lc->n_AF, lc->n_GB}));
        }
    }
    return env;
}

QueueUncertainty case4_queue_region(const Scenario& sc, const ObservationSet& obs, std::size_t m, int j,
                                    const EvidenceOptions& opts) {
    const QueueGeometry g = queue_geometry(sc, m);
    std::vector<PointTD> anchors;
    std::optional<double> d_N;
    if (opts.use_cv) {
        const CvCycle& cur = obs.cv[m].at(j);
        for (const CvRecord& F : cur.queued) anchors.push_back({F.join_t, F.join_d});
        double first = std::numeric_limits<double>::infinity();
        for (const CvRecord& G : cur.non_queued) first = std::min(first, G.arrival);
        if (!cur.non_queued.empty()) d_N = nonqueued_crossing_distance(g, first);
        if (opts.use_loops && !cur.queued.empty() && !cur.non_queued.empty()) {
            const LoopCycle* lc = loop_cycle(obs, m, j);
            if (lc && lc->occupied) {
                const LoopChannel& ch = obs.loops.channels[obs.loops.channel_of_movement[m]];
                anchors.push_back({lc->t_F, ch.position});
            }
        }
    }
    return queue_uncertainty_case4(g, anchors, d_N, false);
}

double case3_share(const Scenario& sc, std::size_t m, int j) {
    const Network& net = sc.network;
    const auto& siblings = net.movements_of_link(net.movement_inbound(m));
    const double start = sc.red_start(m, j), end = start + sc.signal(m).cycle;
    std::vector<double> counts;
    std::size_t self = 0;
    for (std::size_t s : siblings) {
        if (s == m) self = counts.size();
        double n = 0.0;
        const auto& order = sc.truth.movements[s].order;
        auto it = std::lower_bound(order.begin(), order.end(), start,
                                   [&](const VehicleRef& r, double t) { return sc.pass(r).arrival < t; });
        for (; it != order.end() && sc.pass(*it).arrival < end; ++it) {
            if (sc.vehicles[it->vehicle].is_cv) n += 1.0;
        }
        counts.push_back(n);
    }
    return movement_share(counts, self);
}

UncertaintyTable build_uncertainty_table(const Scenario& sc, const EvidenceOptions& opts) {
    const ObservationSet obs = extract_observations(sc);
    const std::size_t n_moves = sc.network.movements().size();
    UncertaintyTable table;
    table.movements.resize(n_moves);
    for (std::size_t m = 0; m < n_moves; ++m) {
        MovementCaseTable& t = table.movements[m];
        const int n = sc.cycle_count(m);
        const double C = sc.signal(m).cycle, lambda_u = sc.flow().lambda_u;
        const QueueGeometry g = queue_geometry(sc, m);
        const double d_fov = movement_fov_distance(sc, m);
        for (auto& v : t.arrival) v.assign(n, 0.0);
        for (auto& v : t.queue) v.assign(n, 0.0);
        for (int j = 0; j < n; ++j) {
            const UavCycleView view = uav_cycle_view(sc, m, j, d_fov);
            t.arrival[1][j] = arrival_uncertainty_case12(2, view.beyond_fov, lambda_u, C, view.t_F, view.t_G, view.n_HB).U;
            t.queue[1][j] = queue_uncertainty_case12(g, 2, view.beyond_fov, d_fov, view.t_F).U;

            const double share = case3_share(sc, m, j);
            t.arrival[2][j] = arrival_uncertainty_case3(share, lambda_u, C).U;
            t.queue[2][j] = queue_uncertainty_case3(g, share).U;

            const Envelope env = case4_arrival_envelope(sc, obs, m, j, opts);
            t.arrival[3][j] = arrival_from_area(env.area(false), lambda_u, C).U;
            t.queue[3][j] = case4_queue_region(sc, obs, m, j, opts).U;
        }
        for (int c = 0; c < 4; ++c) {
            for (double u : t.arrival[c]) t.arrival_sum[c] += u;
            for (double u : t.queue[c]) t.queue_sum[c] += u;
        }
    }
    return table;
}

namespace {

double aggregate(const UncertaintyTable& table, const std::vector<int>& case_label, bool arrival) {
    if (case_label.size() != table.movements.size()) throw InputError("case labels do not match the table");
    double total = 0.0;
    for (std::size_t m = 0; m < case_label.size(); ++m) {
        const int c = case_label[m];
        if (c < 1 || c > 4) throw InputError("case label out of range");
        total += arrival ? table.movements[m].arrival_sum[c - 1] : table.movements[m].queue_sum[c - 1];
    }
    return total;
}

}  // namespace

double aggregate_F_arrival(const UncertaintyTable& table, const std::vector<int>& case_label) {
    return aggregate(table, case_label, true);
}

double aggregate_F_queue(const UncertaintyTable& table, const std::vector<int>& case_label) {
    return aggregate(table, case_label, false);
}

}  // namespace uavloc
