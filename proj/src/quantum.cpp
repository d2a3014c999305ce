#include "uavloc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavloc {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t generation, std::uint64_t index, std::uint64_t purpose) {
    auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffu); };
    auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(generation), hi(generation), lo(index), hi(index), lo(purpose), hi(purpose)};
    return std::mt19937_64(seq);
}

QuantumChromosome uniform_chromosome(std::size_t n) { return QuantumChromosome(n); }

std::vector<std::uint8_t> measure(const QuantumChromosome& q, std::mt19937_64& rng) {
    std::vector<std::uint8_t> bits(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) bits[i] = unit_draw(rng) < q[i].beta * q[i].beta ? 1 : 0;
    return bits;
}

void repair(std::vector<std::uint8_t>& bits, std::size_t limit, std::mt19937_64& rng) {
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) ones.push_back(i);
    }
    while (ones.size() > limit) {
        const std::size_t k = static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(ones.size()));
        bits[ones[k]] = 0;
        ones.erase(ones.begin() + static_cast<std::ptrdiff_t>(k));
    }
}

double rotation_angle(double fit_cur, double fit_best, double theta_min, double theta_max) {
    const double denom = std::max(std::abs(fit_cur), std::abs(fit_best));
    if (denom == 0.0) return theta_min;
    const double ratio = std::min(1.0, std::abs(fit_cur - fit_best) / denom);
    return theta_min + (theta_max - theta_min) * ratio;
}

Qubit rotate_qubit(Qubit q, double delta) {
    const double c = std::cos(delta), s = std::sin(delta);
    return {c * q.alpha - s * q.beta, s * q.alpha + c * q.beta};
}

void rotate(QuantumChromosome& q, const std::vector<std::uint8_t>& best_bits, double delta) {
    if (delta == 0.0) return;
    const double half_pi = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        // Target axis: (±1, 0) for bit 0, (0, ±1) for bit 1; pick the nearer sign.
        const double phi = std::atan2(q[i].beta, q[i].alpha);
        double target;
        if (best_bits[i]) {
            target = phi >= 0.0 ? half_pi : -half_pi;
        } else {
            target = std::abs(phi) <= half_pi ? 0.0 : (phi > 0.0 ? std::numbers::pi : -std::numbers::pi);
        }
        const double gap = target - phi;
        const double step = std::copysign(std::min(delta, std::abs(gap)), gap);
        Qubit r = rotate_qubit(q[i], step);
        const double norm = std::hypot(r.alpha, r.beta);
        q[i] = {r.alpha / norm, r.beta / norm};
    }
}

void not_gate(QuantumChromosome& q, const std::vector<std::size_t>& positions) {
    for (std::size_t p : positions) std::swap(q[p].alpha, q[p].beta);
}

double normalisation_error(const QuantumChromosome& q) {
    double worst = 0.0;
    for (const Qubit& b : q) worst = std::max(worst, std::abs(b.alpha * b.alpha + b.beta * b.beta - 1.0));
    return worst;
}

}  // namespace uavloc
