#include "uavloc/envelope.hpp"

#include <algorithm>

#include "uavloc/errors.hpp"

namespace uavloc {

Envelope::Envelope(double length, double lambda_u) : length_(length), lambda_u_(lambda_u) {
    if (!(length > 0.0) || !(lambda_u > 0.0)) throw InputError("envelope needs positive length and lambda_u");
}

void Envelope::add(Kind kind, double a, double b, double value) {
    a = std::clamp(a, 0.0, length_);
    b = std::clamp(b, 0.0, length_);
    if (b <= a) return;
    constraints_.push_back({kind, a, b, std::clamp(value, 0.0, lambda_u_)});
}

void Envelope::known(double a, double b) { add(Kind::known, a, b, 0.0); }
void Envelope::upper(double a, double b, double hi) { add(Kind::upper, a, b, hi); }
void Envelope::lower(double a, double b, double lo) { add(Kind::lower, a, b, lo); }

void Envelope::intersect(const Envelope& other) {
    for (const Constraint& c : other.constraints_) add(c.kind, c.a, c.b, c.value);
}

std::vector<Envelope::Segment> Envelope::segments() const {
    std::vector<double> cuts{0.0, length_};
    for (const Constraint& c : constraints_) {
        cuts.push_back(c.a);
        cuts.push_back(c.b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Segment> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s{cuts[i], cuts[i + 1], 0.0, lambda_u_, false};
        const double mid = 0.5 * (s.a + s.b);
        for (const Constraint& c : constraints_) {
            if (mid < c.a || mid > c.b) continue;
            switch (c.kind) {
                case Kind::known: s.known = true; break;
                case Kind::upper: s.hi = std::min(s.hi, c.value); break;
                case Kind::lower: s.lo = std::max(s.lo, c.value); break;
            }
        }
        out.push_back(s);
    }
    return out;
}

double Envelope::area(bool strict) const {
    double total = 0.0;
    for (const Segment& s : segments()) {
        if (s.lo > s.hi + 1e-12) {
            if (strict) {
                throw InconsistentObservation("arrival band empty on [" + std::to_string(s.a) + ", " +
                                              std::to_string(s.b) + "]");
            }
            continue;
        }
        if (s.known) continue;
        total += (s.hi - s.lo) * (s.b - s.a);
    }
    return total;
}

}  // namespace uavloc
