#include "uavloc/network.hpp"

#include <algorithm>

#include "uavloc/errors.hpp"

namespace uavloc {

const char* to_string(IntersectionKind kind) {
    switch (kind) {
        case IntersectionKind::crossroad: return "crossroad";
        case IntersectionKind::t_junction: return "t_junction";
        case IntersectionKind::boundary: return "boundary";
    }
    return "?";
}

const char* to_string(Turn turn) {
    switch (turn) {
        case Turn::left: return "left";
        case Turn::through: return "through";
        case Turn::right: return "right";
    }
    return "?";
}

IntersectionKind intersection_kind_from_string(const std::string& s) {
    if (s == "crossroad") return IntersectionKind::crossroad;
    if (s == "t_junction") return IntersectionKind::t_junction;
    if (s == "boundary") return IntersectionKind::boundary;
    throw InputError("unknown intersection kind '" + s + "'");
}

Turn turn_from_string(const std::string& s) {
    if (s == "left") return Turn::left;
    if (s == "through") return Turn::through;
    if (s == "right") return Turn::right;
    throw InputError("unknown turn '" + s + "'");
}

std::size_t ConnectivityMatrix::row_sum(std::size_t i) const {
    std::size_t s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += entries_[i * n_ + j];
    return s;
}

std::size_t ConnectivityMatrix::column_sum(std::size_t j) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += entries_[i * n_ + j];
    return s;
}

namespace {

template <typename T>
void index_ids(const std::vector<T>& items, std::unordered_map<std::string, std::size_t>& ix,
               const char* what, std::vector<Violation>& issues) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!ix.emplace(items[i].id, i).second) {
            issues.push_back({items[i].id, std::string("duplicate ") + what + " id"});
        }
    }
}

std::size_t find_or_npos(const std::unordered_map<std::string, std::size_t>& ix, const std::string& id) {
    auto it = ix.find(id);
    return it == ix.end() ? Network::npos : it->second;
}

std::size_t find_or_throw(const std::unordered_map<std::string, std::size_t>& ix, const std::string& id,
                          const char* what) {
    auto it = ix.find(id);
    if (it == ix.end()) throw InputError(std::string("unknown ") + what + " id '" + id + "'");
    return it->second;
}

}  // namespace

Network::Network(NetworkDescription description) : desc_(std::move(description)) {
    index_ids(desc_.intersections, node_ix_, "intersection", construction_issues_);
    index_ids(desc_.links, link_ix_, "link", construction_issues_);
    index_ids(desc_.movements, move_ix_, "movement", construction_issues_);
    index_ids(desc_.paths, path_ix_, "path", construction_issues_);

    const std::size_t n_nodes = desc_.intersections.size();
    const std::size_t n_links = desc_.links.size();
    const std::size_t n_moves = desc_.movements.size();

    link_from_.resize(n_links);
    link_to_.resize(n_links);
    for (std::size_t l = 0; l < n_links; ++l) {
        link_from_[l] = find_or_npos(node_ix_, desc_.links[l].from_intersection);
        link_to_[l] = find_or_npos(node_ix_, desc_.links[l].to_intersection);
    }

    movement_node_.resize(n_moves);
    movement_in_.resize(n_moves);
    movement_out_.resize(n_moves);
    link_moves_.assign(n_links, {});
    node_moves_.assign(n_nodes, {});
    for (std::size_t m = 0; m < n_moves; ++m) {
        const Movement& mv = desc_.movements[m];
        movement_node_[m] = find_or_npos(node_ix_, mv.intersection);
        movement_in_[m] = find_or_npos(link_ix_, mv.inbound_link);
        movement_out_[m] = mv.outbound_link ? find_or_npos(link_ix_, *mv.outbound_link) : npos;
        if (movement_in_[m] != npos) link_moves_[movement_in_[m]].push_back(m);
        if (movement_node_[m] != npos) node_moves_[movement_node_[m]].push_back(m);
    }

    move_paths_.assign(n_moves, {});
    path_moves_.resize(desc_.paths.size());
    for (std::size_t p = 0; p < desc_.paths.size(); ++p) {
        for (const auto& mid : desc_.paths[p].movement_sequence) {
            std::size_t m = find_or_npos(move_ix_, mid);
            path_moves_[p].push_back(m);
            if (m != npos) {
                auto& v = move_paths_[m];
                if (v.empty() || v.back() != p) v.push_back(p);
            }
        }
    }

    site_of_.assign(n_nodes, npos);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        if (desc_.intersections[i].kind != IntersectionKind::boundary) {
            site_of_[i] = sites_.size();
            sites_.push_back(i);
        }
    }
}

std::size_t Network::intersection_index(const std::string& id) const { return find_or_throw(node_ix_, id, "intersection"); }
std::size_t Network::link_index(const std::string& id) const { return find_or_throw(link_ix_, id, "link"); }
std::size_t Network::movement_index(const std::string& id) const { return find_or_throw(move_ix_, id, "movement"); }
std::size_t Network::path_index(const std::string& id) const { return find_or_throw(path_ix_, id, "path"); }

std::size_t Network::movement_upstream(std::size_t m) const {
    std::size_t l = movement_in_[m];
    return l == npos ? npos : link_from_[l];
}

std::vector<std::size_t> Network::path_links(std::size_t p) const {
    std::vector<std::size_t> out;
    const auto& seq = path_moves_[p];
    if (seq.empty()) return out;
    out.push_back(movement_in_[seq.front()]);
    for (std::size_t m : seq) {
        if (movement_out_[m] != npos) out.push_back(movement_out_[m]);
    }
    return out;
}

std::vector<std::string> Network::movements_of_link(const std::string& link_id) const {
    std::vector<std::string> out;
    for (std::size_t m : link_moves_[link_index(link_id)]) out.push_back(desc_.movements[m].id);
    return out;
}

std::vector<std::string> Network::paths_through_movement(const std::string& movement_id) const {
    std::vector<std::string> out;
    for (std::size_t p : move_paths_[movement_index(movement_id)]) out.push_back(desc_.paths[p].id);
    return out;
}

std::vector<std::size_t> Network::upstream_neighbors(std::size_t intersection) const {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < link_to_.size(); ++l) {
        if (link_to_[l] == intersection && link_from_[l] != npos && link_from_[l] != intersection) {
            out.push_back(link_from_[l]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> Network::downstream_neighbors(std::size_t intersection) const {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < link_from_.size(); ++l) {
        if (link_from_[l] == intersection && link_to_[l] != npos && link_to_[l] != intersection) {
            out.push_back(link_to_[l]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::string> Network::adjacency(const std::string& intersection_id) const {
    std::vector<std::string> out;
    for (std::size_t i : upstream_neighbors(intersection_index(intersection_id))) {
        out.push_back(desc_.intersections[i].id);
    }
    return out;
}

ValidationReport Network::validate() const {
    ValidationReport report;
    report.violations = construction_issues_;
    auto add = [&](const std::string& id, std::string msg) { report.violations.push_back({id, std::move(msg)}); };

    for (std::size_t l = 0; l < desc_.links.size(); ++l) {
        const Link& link = desc_.links[l];
        if (link_from_[l] == npos) add(link.id, "from_intersection '" + link.from_intersection + "' does not exist");
        if (link_to_[l] == npos) add(link.id, "to_intersection '" + link.to_intersection + "' does not exist");
        if (link.from_intersection == link.to_intersection) add(link.id, "link starts and ends at the same intersection");
        if (!(link.length > 0.0)) add(link.id, "length must be positive");
        if (link.lane_count < 1) add(link.id, "lane_count must be positive");
    }

    for (std::size_t m = 0; m < desc_.movements.size(); ++m) {
        const Movement& mv = desc_.movements[m];
        if (movement_node_[m] == npos) {
            add(mv.id, "intersection '" + mv.intersection + "' does not exist");
        } else if (is_boundary(movement_node_[m])) {
            add(mv.id, "movement located at a boundary node");
        }
        if (movement_in_[m] == npos) {
            add(mv.id, "inbound link '" + mv.inbound_link + "' does not exist");
        } else if (link_to_[movement_in_[m]] != movement_node_[m]) {
            add(mv.id, "inbound link '" + mv.inbound_link + "' does not end at '" + mv.intersection + "'");
        }
        if (mv.outbound_link) {
            if (movement_out_[m] == npos) {
                add(mv.id, "outbound link '" + *mv.outbound_link + "' does not exist");
            } else if (link_from_[movement_out_[m]] != movement_node_[m]) {
                add(mv.id, "outbound link '" + *mv.outbound_link + "' does not start at '" + mv.intersection + "'");
            }
        }
    }

    for (std::size_t p = 0; p < desc_.paths.size(); ++p) {
        const Path& path = desc_.paths[p];
        const auto& seq = path_moves_[p];
        if (seq.empty()) {
            add(path.id, "empty movement sequence");
            continue;
        }
        bool resolved = true;
        for (std::size_t k = 0; k < seq.size(); ++k) {
            if (seq[k] == npos) {
                add(path.id, "movement '" + path.movement_sequence[k] + "' at index " + std::to_string(k) +
                                 " does not exist");
                resolved = false;
            }
        }
        if (!resolved) continue;
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            if (movement_out_[seq[k]] == npos || movement_out_[seq[k]] != movement_in_[seq[k + 1]]) {
                add(path.id, "movements not link-chained at index " + std::to_string(k));
            }
        }
        if (desc_.movements[seq.front()].inbound_link != path.origin_link) {
            add(path.id, "origin link differs from the first movement's inbound link");
        }
        const auto& last = desc_.movements[seq.back()];
        if (!last.outbound_link || *last.outbound_link != path.destination_link) {
            add(path.id, "destination link differs from the last movement's outbound link");
        }
    }
    return report;
}

ConnectivityMatrix build_connectivity(const Network& network) {
    ConnectivityMatrix c(network.intersections().size());
    for (std::size_t l = 0; l < network.links().size(); ++l) {
        std::size_t a = network.link_from(l), b = network.link_to(l);
        if (a != Network::npos && b != Network::npos && a != b) c.set(a, b);
    }
    return c;
}

ValidationReport validate_network(const Network& network) { return network.validate(); }

}  // namespace uavloc
