#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace uavloc {

enum class IntersectionKind { crossroad, t_junction, boundary };
enum class Turn { left, through, right };

const char* to_string(IntersectionKind kind);
const char* to_string(Turn turn);
IntersectionKind intersection_kind_from_string(const std::string& s);
Turn turn_from_string(const std::string& s);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Intersection {
    std::string id;
    IntersectionKind kind = IntersectionKind::crossroad;
    Point2 position;
};

struct Link {
    std::string id;
    std::string from_intersection;
    std::string to_intersection;
    double length = 0.0;  // meters
    int lane_count = 1;
};

struct Movement {
    std::string id;
    std::string intersection;  // where the turn executes
    std::string inbound_link;
    Turn turn = Turn::through;
    std::optional<std::string> outbound_link;
};

/// A path is canonically its movement sequence; the link view is derived.
struct Path {
    std::string id;
    std::string origin_link;
    std::string destination_link;
    std::vector<std::string> movement_sequence;
};

struct NetworkDescription {
    std::vector<Intersection> intersections;
    std::vector<Link> links;
    std::vector<Movement> movements;
    std::vector<Path> paths;
};

struct Violation {
    std::string entity;  // id of the offending entity
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Square 0/1 matrix over intersection indices; entry(i, j) = 1 iff a link runs i -> j.
class ConnectivityMatrix {
public:
    explicit ConnectivityMatrix(std::size_t n = 0) : n_(n), entries_(n * n, 0) {}

    std::size_t size() const { return n_; }
    std::uint8_t operator()(std::size_t from, std::size_t to) const { return entries_[from * n_ + to]; }
    void set(std::size_t from, std::size_t to) { entries_[from * n_ + to] = 1; }
    std::size_t row_sum(std::size_t i) const;
    std::size_t column_sum(std::size_t j) const;

private:
    std::size_t n_;
    std::vector<std::uint8_t> entries_;
};

/// Signalized road network with resolved integer indices.
///
/// Construction never throws on semantic problems: unresolved references are
/// recorded and reported by validate(). Lookups by id throw InputError on
/// unknown ids. Immutable after construction.
///
/// Non-boundary intersections are the UAV sites; deployment vectors are
/// indexed by site number in intersection order.
class Network {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Network() = default;
    explicit Network(NetworkDescription description);

    const NetworkDescription& description() const { return desc_; }
    const std::vector<Intersection>& intersections() const { return desc_.intersections; }
    const std::vector<Link>& links() const { return desc_.links; }
    const std::vector<Movement>& movements() const { return desc_.movements; }
    const std::vector<Path>& paths() const { return desc_.paths; }

    std::size_t intersection_index(const std::string& id) const;
    std::size_t link_index(const std::string& id) const;
    std::size_t movement_index(const std::string& id) const;
    std::size_t path_index(const std::string& id) const;

    // Resolved relations (npos where the reference does not resolve).
    std::size_t link_from(std::size_t link) const { return link_from_[link]; }
    std::size_t link_to(std::size_t link) const { return link_to_[link]; }
    std::size_t movement_intersection(std::size_t m) const { return movement_node_[m]; }
    std::size_t movement_inbound(std::size_t m) const { return movement_in_[m]; }
    std::size_t movement_outbound(std::size_t m) const { return movement_out_[m]; }
    /// Intersection the inbound link starts at; may be a boundary node.
    std::size_t movement_upstream(std::size_t m) const;
    const std::vector<std::size_t>& path_movements(std::size_t p) const { return path_moves_[p]; }
    std::vector<std::size_t> path_links(std::size_t p) const;

    const std::vector<std::size_t>& movements_of_link(std::size_t link) const { return link_moves_[link]; }
    const std::vector<std::size_t>& movements_at(std::size_t intersection) const { return node_moves_[intersection]; }
    const std::vector<std::size_t>& paths_through_movement(std::size_t m) const { return move_paths_[m]; }

    std::vector<std::string> movements_of_link(const std::string& link_id) const;
    std::vector<std::string> paths_through_movement(const std::string& movement_id) const;
    /// Upstream neighbours: all i' with a link i' -> i.
    std::vector<std::string> adjacency(const std::string& intersection_id) const;
    std::vector<std::size_t> upstream_neighbors(std::size_t intersection) const;
    std::vector<std::size_t> downstream_neighbors(std::size_t intersection) const;

    bool is_boundary(std::size_t intersection) const {
        return desc_.intersections[intersection].kind == IntersectionKind::boundary;
    }

    std::size_t site_count() const { return sites_.size(); }
    std::size_t site_intersection(std::size_t site) const { return sites_[site]; }
    /// Site number of an intersection, or npos for boundary nodes.
    std::size_t site_of(std::size_t intersection) const { return site_of_[intersection]; }
    const std::vector<std::size_t>& sites() const { return sites_; }

    ValidationReport validate() const;

private:
    NetworkDescription desc_;
    std::unordered_map<std::string, std::size_t> node_ix_, link_ix_, move_ix_, path_ix_;
    std::vector<std::size_t> link_from_, link_to_;
    std::vector<std::size_t> movement_node_, movement_in_, movement_out_;
    std::vector<std::vector<std::size_t>> path_moves_;
    std::vector<std::vector<std::size_t>> link_moves_, node_moves_, move_paths_;
    std::vector<std::size_t> sites_, site_of_;
    std::vector<Violation> construction_issues_;
};

ConnectivityMatrix build_connectivity(const Network& network);
ValidationReport validate_network(const Network& network);

}  // namespace uavloc
