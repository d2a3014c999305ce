#include "uavloc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <tuple>

#include "uavloc/errors.hpp"
#include "uavloc/observability.hpp"

namespace uavloc {

namespace {

constexpr double kEps = 1e-9;

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int cycle_of(const MovementSignal& s, double t) { return static_cast<int>(std::floor((t - s.offset) / s.cycle)); }

void check_inputs(const ScenarioInputs& in, const Network& net) {
    auto report = net.validate();
    if (!report.ok()) {
        std::string msg = "invalid network:";
        for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) {
            msg += " [" + report.violations[i].entity + ": " + report.violations[i].message + "]";
        }
        throw InputError(msg);
    }
    if (in.signals.movements.size() != net.movements().size()) {
        throw InputError("signal plan covers " + std::to_string(in.signals.movements.size()) + " movements, network has " +
                         std::to_string(net.movements().size()));
    }
    if (in.flow.path_demand_vph.size() != net.paths().size()) {
        throw InputError("flow model covers " + std::to_string(in.flow.path_demand_vph.size()) + " paths, network has " +
                         std::to_string(net.paths().size()));
    }
    if (!(in.penetration >= 0.0 && in.penetration <= 1.0)) throw InputError("penetration must lie in [0, 1]");
    const FlowModel& f = in.flow;
    if (!(f.w_a > 0.0 && f.w_a < f.w_d)) throw InputError("wave speeds must satisfy 0 < w_a < w_d");
    if (!(f.saturation_headway > 0.0)) throw InputError("saturation headway must be positive");
    if (!(f.lambda_u > 0.0)) throw InputError("lambda_u must be positive");
    if (!(f.free_flow_speed > 0.0)) throw InputError("free-flow speed must be positive");
    if (!(in.signals.horizon > 0.0)) throw InputError("horizon must be positive");
    if (!(in.bin_width > 0.0)) throw InputError("bin width must be positive");
    if (!(in.uav_half_extent > 0.0)) throw InputError("UAV box half extent must be positive");
    for (double d : f.path_demand_vph) {
        if (!(d >= 0.0)) throw InputError("path demand must be nonnegative");
    }
    for (std::size_t m = 0; m < in.signals.movements.size(); ++m) {
        const MovementSignal& s = in.signals.movements[m];
        if (!(s.cycle > 0.0 && s.red > 0.0 && s.red < s.cycle)) {
            throw InputError("movement " + net.movements()[m].id + ": signal needs 0 < R < C");
        }
        if (!(s.offset >= 0.0)) throw InputError("movement " + net.movements()[m].id + ": negative offset");
    }
}

void check_capacity(const ScenarioInputs& in, const Network& net) {
    std::vector<double> rate(net.movements().size(), 0.0);
    for (std::size_t p = 0; p < net.paths().size(); ++p) {
        for (std::size_t m : net.path_movements(p)) rate[m] += in.flow.path_demand_vph[p] / 3600.0;
    }
    for (std::size_t m = 0; m < rate.size(); ++m) {
        const MovementSignal& s = in.signals.movements[m];
        const double capacity = (s.cycle - s.red) / in.flow.saturation_headway;
        if (rate[m] * s.cycle > capacity + kEps) {
            throw InfeasibleError("movement " + net.movements()[m].id + " demand " + std::to_string(rate[m] * s.cycle) +
                                  " veh/cycle exceeds capacity " + std::to_string(capacity));
        }
    }
}

}  // namespace

int Scenario::cycle_count(std::size_t m) const {
    const MovementSignal& s = signal(m);
    return std::max(0, static_cast<int>(std::floor((inputs.signals.horizon - s.offset) / s.cycle + kEps)));
}

double Scenario::red_start(std::size_t m, int j) const { return signal(m).offset + j * signal(m).cycle; }

Scenario generate_scenario(ScenarioInputs inputs) {
    Network net(inputs.network);
    check_inputs(inputs, net);
    check_capacity(inputs, net);

    const FlowModel& flow = inputs.flow;
    const double horizon = inputs.signals.horizon;
    std::mt19937_64 rng(inputs.seed);

    std::vector<VehicleRecord> vehicles;
    for (std::size_t p = 0; p < net.paths().size(); ++p) {
        const double rate = flow.path_demand_vph[p] / 3600.0;
        if (rate <= 0.0) continue;
        double t = 0.0;
        for (std::size_t k = 0;; ++k) {
            if (flow.process == ArrivalProcess::poisson) {
                t += -std::log1p(-unit_draw(rng)) / rate;
            } else {
                t = static_cast<double>(k) / rate;
            }
            if (t >= horizon) break;
            VehicleRecord v;
            v.id = vehicles.size();
            v.path = p;
            v.release = t;
            v.is_cv = unit_draw(rng) < inputs.penetration;
            vehicles.push_back(std::move(v));
        }
    }

    // (time, vehicle, step) min-heap keeps per-movement FIFO service.
    using Event = std::tuple<double, std::size_t, std::size_t>;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
    for (const VehicleRecord& v : vehicles) {
        const std::size_t first = net.path_movements(v.path).front();
        const double travel = net.links()[net.movement_inbound(first)].length / flow.free_flow_speed;
        events.emplace(std::ceil(v.release + travel), v.id, 0);
    }
    std::vector<double> last_departure(net.movements().size(), -std::numeric_limits<double>::infinity());
    while (!events.empty()) {
        auto [a, vid, step] = events.top();
        events.pop();
        VehicleRecord& v = vehicles[vid];
        const std::size_t m = net.path_movements(v.path)[step];
        const MovementSignal& s = inputs.signals.movements[m];
        double dep = std::max(a, last_departure[m] + flow.saturation_headway);
        const int cyc = cycle_of(s, dep);
        const double within = dep - s.offset - cyc * s.cycle;
        if (within < s.red - kEps) dep = s.offset + cyc * s.cycle + s.red;
        last_departure[m] = dep;

        MovementPass pass;
        pass.movement = m;
        pass.arrival = a;
        pass.departure = dep;
        v.passes.push_back(pass);
        if (step + 1 < net.path_movements(v.path).size()) {
            const double travel = net.links()[net.movement_outbound(m)].length / flow.free_flow_speed;
            events.emplace(std::ceil(dep + travel), vid, step + 1);
        }
    }
    return assemble_scenario(std::move(inputs), std::move(vehicles));
}

Scenario assemble_scenario(ScenarioInputs inputs, std::vector<VehicleRecord> vehicles) {
    Scenario sc;
    sc.network = Network(inputs.network);
    check_inputs(inputs, sc.network);
    sc.inputs = std::move(inputs);
    sc.vehicles = std::move(vehicles);
    const Network& net = sc.network;
    const FlowModel& flow = sc.inputs.flow;
    const double s_j = flow.jam_spacing();
    const std::size_t n_moves = net.movements().size();

    for (std::size_t vid = 0; vid < sc.vehicles.size(); ++vid) {
        VehicleRecord& v = sc.vehicles[vid];
        if (v.id != vid) throw InputError("vehicle ids must be dense and ordered");
        if (v.path >= net.paths().size()) throw InputError("vehicle " + std::to_string(vid) + " has unknown path");
        const auto& seq = net.path_movements(v.path);
        if (v.passes.size() != seq.size()) {
            throw InputError("vehicle " + std::to_string(vid) + " passes do not match its path");
        }
        for (std::size_t k = 0; k < seq.size(); ++k) {
            MovementPass& p = v.passes[k];
            p.movement = seq[k];
            const MovementSignal& s = sc.signal(p.movement);
            if (p.departure < p.arrival - kEps) throw InputError("vehicle " + std::to_string(vid) + " departs before arriving");
            p.cycle = cycle_of(s, p.arrival);
            p.service_cycle = cycle_of(s, p.departure);
            p.queued = false;
            p.join_t = p.join_d = 0.0;
        }
    }

    sc.truth.movements.assign(n_moves, {});
    for (std::size_t vid = 0; vid < sc.vehicles.size(); ++vid) {
        for (std::size_t k = 0; k < sc.vehicles[vid].passes.size(); ++k) {
            sc.truth.movements[sc.vehicles[vid].passes[k].movement].order.push_back({vid, k});
        }
    }

    for (std::size_t m = 0; m < n_moves; ++m) {
        MovementTruth& mt = sc.truth.movements[m];
        const MovementSignal& s = sc.signal(m);
        std::stable_sort(mt.order.begin(), mt.order.end(), [&](const VehicleRef& x, const VehicleRef& y) {
            const MovementPass& a = sc.pass(x);
            const MovementPass& b = sc.pass(y);
            if (a.arrival != b.arrival) return a.arrival < b.arrival;
            return x.vehicle < y.vehicle;
        });

        // Saturated platoons per service cycle: pushed to green start, or discharged at
        // h_s behind a platoon member. A join that the dissipation wave has already
        // passed ends the platoon.
        std::map<int, int> queued_in_service;
        std::map<int, bool> platoon_closed;
        const MovementPass* prev = nullptr;
        bool prev_in_platoon = false;
        for (const VehicleRef& ref : mt.order) {
            MovementPass& p = sc.vehicles[ref.vehicle].passes[ref.step];
            const int sv = p.service_cycle;
            const bool waited = p.departure > p.arrival + kEps;
            const double green_start = s.offset + sv * s.cycle + s.red;
            const bool pushed = waited && std::abs(p.departure - green_start) < 1e-6;
            const bool chained = waited && prev && prev_in_platoon && prev->service_cycle == sv &&
                                 std::abs(p.departure - (prev->departure + flow.saturation_headway)) < 1e-6;
            bool queued = false;
            if ((pushed || chained) && !platoon_closed[sv]) {
                int ahead = 0;
                for (int c = p.cycle; c < sv; ++c) ahead += queued_in_service[c];
                ahead += queued_in_service[sv];
                const double d = (ahead + 1) * s_j;
                const double tau = p.arrival - sc.red_start(m, p.cycle);
                if (tau <= s.red + d / flow.w_d + kEps) {
                    queued = true;
                    p.join_d = d;
                    ++queued_in_service[sv];
                }
            }
            if (!queued) platoon_closed[sv] = true;
            p.queued = queued;
            prev = &p;
            prev_in_platoon = queued;
        }

        const int n_cycles = sc.cycle_count(m);
        mt.cycles.assign(n_cycles, {});
        const int n_bins = static_cast<int>(std::ceil(s.cycle / sc.inputs.bin_width - kEps));
        for (CycleTruth& ct : mt.cycles) ct.profile.assign(n_bins, 0);

        std::vector<bool> capped(n_cycles, false);
        std::vector<double> prev_join_t(n_cycles, 0.0), prev_join_d(n_cycles, 0.0);
        std::vector<bool> has_prev(n_cycles, false);
        std::vector<int> residual_queued(n_cycles, 0);
        std::vector<double> max_join_d(n_cycles, 0.0);
        for (const VehicleRef& ref : mt.order) {
            MovementPass& p = sc.vehicles[ref.vehicle].passes[ref.step];
            const int j = p.cycle;
            if (j >= 0 && j < n_cycles) {
                CycleTruth& ct = mt.cycles[j];
                ct.arrivals.push_back(ref);
                const double tau = p.arrival - sc.red_start(m, j);
                ct.profile[std::clamp(static_cast<int>(std::floor(tau / sc.inputs.bin_width)), 0, n_bins - 1)]++;
                if (p.queued) {
                    double t = std::max(tau, p.join_d / flow.w_a);
                    if (has_prev[j]) t = std::max(t, prev_join_t[j] + (p.join_d - prev_join_d[j]) / flow.w_a);
                    const double release = s.red + p.join_d / flow.w_d;
                    if (t > release + kEps) {
                        t = release;
                        capped[j] = true;
                    }
                    p.join_t = t;
                    prev_join_t[j] = t;
                    prev_join_d[j] = p.join_d;
                    has_prev[j] = true;
                    max_join_d[j] = std::max(max_join_d[j], p.join_d);
                }
            }
            const int first = std::max(j + 1, 0);
            const int last = std::min(p.service_cycle, n_cycles - 1);
            for (int c = first; c <= last; ++c) {
                mt.cycles[c].residuals.push_back(ref);
                mt.cycles[c].residual_in++;
                if (p.queued) residual_queued[c]++;
            }
            for (int c = std::max(j, 0); c < std::min(p.service_cycle, n_cycles); ++c) mt.cycles[c].residual_out++;
            if (p.service_cycle >= 0 && p.service_cycle < n_cycles) mt.cycles[p.service_cycle].served++;
        }

        const double d_apex = flow.w_a * flow.w_d * s.red / (flow.w_d - flow.w_a);
        const double length = net.links()[net.movement_inbound(m)].length;
        for (int j = 0; j < n_cycles; ++j) {
            CycleTruth& ct = mt.cycles[j];
            ct.boq = std::max(max_join_d[j], residual_queued[j] * s_j);
            ct.boq_time = s.red + ct.boq / flow.w_d;
            ct.consistent = !capped[j] && ct.residual_in == 0 && ct.boq <= d_apex + kEps;
            if (ct.boq > length + kEps) {
                throw InfeasibleError("movement " + net.movements()[m].id + " cycle " + std::to_string(j) +
                                      ": back of queue " + std::to_string(ct.boq) + " m exceeds link length " +
                                      std::to_string(length) + " m");
            }
        }
    }

    sc.truth.path_flow.assign(net.paths().size(), 0.0);
    sc.truth.link_flow.assign(net.links().size(), 0.0);
    sc.truth.movement_flow.assign(n_moves, 0.0);
    for (const VehicleRecord& v : sc.vehicles) {
        sc.truth.path_flow[v.path] += 1.0;
        for (std::size_t l : net.path_links(v.path)) sc.truth.link_flow[l] += 1.0;
    }
    for (std::size_t m = 0; m < n_moves; ++m) {
        for (const CycleTruth& ct : sc.truth.movements[m].cycles) sc.truth.movement_flow[m] += ct.arrivals.size();
    }
    return sc;
}

// ---- observation channels -------------------------------------------------

CvObservations extract_cv_observations(const Scenario& sc) {
    const std::size_t n_moves = sc.network.movements().size();
    CvObservations out(n_moves);
    for (std::size_t m = 0; m < n_moves; ++m) {
        const MovementTruth& mt = sc.truth.movements[m];
        out[m].resize(mt.cycles.size());
        for (std::size_t j = 0; j < mt.cycles.size(); ++j) {
            const double start = sc.red_start(m, static_cast<int>(j));
            auto make = [&](const VehicleRef& ref) {
                const MovementPass& p = sc.pass(ref);
                CvRecord r;
                r.vehicle = ref.vehicle;
                r.step = ref.step;
                r.arrival = p.arrival - start;
                r.departure = p.departure - start;
                r.join_t = p.join_t;
                r.join_d = p.join_d;
                r.served_in_cycle = p.service_cycle == static_cast<int>(j);
                return r;
            };
            CvCycle& cc = out[m][j];
            for (const VehicleRef& ref : mt.cycles[j].arrivals) {
                if (!sc.vehicles[ref.vehicle].is_cv) continue;
                if (sc.pass(ref).queued) cc.queued.push_back(make(ref));
                else cc.non_queued.push_back(make(ref));
            }
            for (const VehicleRef& ref : mt.cycles[j].residuals) {
                if (sc.vehicles[ref.vehicle].is_cv && sc.pass(ref).queued) cc.twice_queued.push_back(make(ref));
            }
            std::stable_sort(cc.queued.begin(), cc.queued.end(),
                             [](const CvRecord& a, const CvRecord& b) { return a.join_t < b.join_t; });
            std::stable_sort(cc.non_queued.begin(), cc.non_queued.end(),
                             [](const CvRecord& a, const CvRecord& b) { return a.departure < b.departure; });
        }
    }
    return out;
}

bool queue_crossing(const Scenario& sc, std::size_t m, int j, double distance, double& t_cross) {
    const CycleTruth& ct = sc.truth.movements[m].cycles.at(j);
    t_cross = 0.0;
    if (ct.boq < distance - kEps) return false;
    const double s_j = sc.flow().jam_spacing();
    int standing = 0;
    for (const VehicleRef& ref : ct.residuals) standing += sc.pass(ref).queued ? 1 : 0;
    if (standing * s_j >= distance - kEps) return true;  // already covered at red start
    for (const VehicleRef& ref : ct.arrivals) {
        const MovementPass& p = sc.pass(ref);
        if (p.queued && p.join_d >= distance - kEps) {
            t_cross = std::max(0.0, p.join_t - (p.join_d - distance) / sc.flow().w_a);
            return true;
        }
    }
    return true;
}

LoopEventLog extract_loop_events(const Scenario& sc, const std::vector<LoopDetector>& detectors) {
    const Network& net = sc.network;
    LoopEventLog log;
    log.channel_of_movement.assign(net.movements().size(), Network::npos);
    for (const LoopDetector& det : detectors) {
        LoopChannel ch;
        ch.link = net.link_index(det.link);
        ch.position = det.position;
        const double length = net.links()[ch.link].length;
        if (!(det.position > 0.0 && det.position < length)) {
            throw InputError("loop on link " + det.link + " at " + std::to_string(det.position) +
                             " m lies outside the link (length " + std::to_string(length) + " m)");
        }
        ch.movements = net.movements_of_link(ch.link);
        for (std::size_t m : ch.movements) {
            if (log.channel_of_movement[m] != Network::npos) throw InputError("two loops on link " + det.link);
            log.channel_of_movement[m] = log.channels.size();
            const MovementSignal& s = sc.signal(m);
            const MovementTruth& mt = sc.truth.movements[m];
            std::vector<LoopCycle> cycles(mt.cycles.size());
            for (std::size_t j = 0; j < mt.cycles.size(); ++j) {
                LoopCycle& lc = cycles[j];
                const double start = sc.red_start(m, static_cast<int>(j));
                double t_cross = 0.0;
                lc.occupied = queue_crossing(sc, m, static_cast<int>(j), det.position, t_cross);
                if (lc.occupied) {
                    lc.t_F = std::min(t_cross, s.cycle);
                    lc.t_G = std::clamp(s.red + det.position / sc.flow().w_d, lc.t_F, s.cycle);
                } else {
                    lc.t_F = lc.t_G = s.cycle;
                }
                for (const VehicleRef& ref : mt.cycles[j].arrivals) {
                    const MovementPass& p = sc.pass(ref);
                    const double tau = p.arrival - start;
                    if (p.queued && p.join_d >= det.position - kEps) {
                        ++lc.over;
                        ch.passings.push_back(start + lc.t_G);
                    } else if (tau < lc.t_F) {
                        ++lc.n_AF;
                        ch.passings.push_back(p.arrival);
                    } else {
                        ++lc.n_GB;
                        ch.passings.push_back(start + std::max(tau, lc.t_G));
                    }
                }
            }
            ch.cycles.push_back(std::move(cycles));
        }
        std::sort(ch.passings.begin(), ch.passings.end());
        log.channels.push_back(std::move(ch));
    }
    return log;
}

double movement_fov_distance(const Scenario& sc, std::size_t m) {
    const Network& net = sc.network;
    const std::size_t link = net.movement_inbound(m);
    const Point2 a = net.intersections()[net.movement_intersection(m)].position;
    const Point2 b = net.intersections()[net.link_from(link)].position;
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double norm = std::hypot(dx, dy);
    double reach = sc.inputs.uav_half_extent;
    if (norm > 0.0) reach /= std::max(std::abs(dx), std::abs(dy)) / norm;
    return std::min(reach, net.links()[link].length);
}

UavCycleView uav_cycle_view(const Scenario& sc, std::size_t m, int j, double d_fov) {
    const CycleTruth& ct = sc.truth.movements[m].cycles.at(j);
    UavCycleView cv;
    cv.visible = static_cast<int>(ct.arrivals.size());
    if (ct.boq <= d_fov + kEps) return cv;
    cv.beyond_fov = true;
    queue_crossing(sc, m, j, d_fov, cv.t_F);
    cv.t_G = std::min(sc.signal(m).cycle, ct.boq_time);
    for (const VehicleRef& ref : ct.arrivals) {
        const MovementPass& p = sc.pass(ref);
        if (p.queued && p.join_d > d_fov + kEps) ++cv.n_HB;
    }
    cv.visible -= cv.n_HB;
    return cv;
}

std::vector<UavMovementView> clip_uav_view(const Scenario& sc, const Deployment& deployment) {
    const MovementObservability obs = movement_observability(sc.network, deployment);
    std::vector<UavMovementView> out(sc.network.movements().size());
    for (std::size_t m = 0; m < out.size(); ++m) {
        UavMovementView& view = out[m];
        view.case_label = obs.case_label[m];
        view.d_fov = movement_fov_distance(sc, m);
        const int n = sc.cycle_count(m);
        for (int j = 0; j < n; ++j) view.cycles.push_back(uav_cycle_view(sc, m, j, view.d_fov));
    }
    return out;
}

}  // namespace uavloc
