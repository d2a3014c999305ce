#pragma once

#include <vector>

namespace uavloc {

/// Feasible arrival-rate band over a cycle [0, length], built as the intersection of
/// interval constraints. The band always starts as [0, lambda_u].
class Envelope {
public:
    struct Segment {
        double a, b;
        double lo, hi;
        bool known;
    };

    Envelope(double length, double lambda_u);

    double length() const { return length_; }
    double lambda_u() const { return lambda_u_; }

    /// Arrivals on [a, b] are fully determined.
    void known(double a, double b);
    void upper(double a, double b, double hi);
    void lower(double a, double b, double lo);
    /// Adds every constraint of `other`.
    void intersect(const Envelope& other);

    std::vector<Segment> segments() const;
    /// Integral of band height. Strict mode throws InconsistentObservation when
    /// lo > hi on any segment; otherwise such segments contribute zero.
    double area(bool strict = false) const;

private:
    enum class Kind { known, upper, lower };
    struct Constraint {
        Kind kind;
        double a, b, value;
    };
    void add(Kind kind, double a, double b, double value);

    double length_;
    double lambda_u_;
    std::vector<Constraint> constraints_;
};

}  // namespace uavloc
